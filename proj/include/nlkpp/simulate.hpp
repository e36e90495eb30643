#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nlkpp/dispersion.hpp"
#include "nlkpp/kernel.hpp"

namespace nlkpp {

/// Periodic grid x_j = j L / N with signed wavenumbers 2 pi j / L.
struct Grid {
  double L = 0.0;
  int N = 0;

  /// Errors: "invalid_grid" (validation) unless N >= 256 is a power of two
  /// and L > 0.
  static Grid make(double L, int N);

  double dx() const { return L / N; }
  double x(int j) const { return j * dx(); }
  /// Wavenumber of real-FFT bin j = 0..N/2.
  double k(int j) const;
};

enum class Backend { fourier, elliptic };

Backend parse_backend(const std::string& s);
std::string to_string(Backend b);

/// phi * u on the periodic grid. "fourier" multiplies by phi_hat(k_j);
/// "elliptic" solves v'' - a^2 v + 3a^2 u = 0 and w'' - w - 2u = 0 spectrally
/// and returns v + w (exponential family only).
std::vector<double> nonlocal_apply(const Grid& g, const std::vector<double>& u,
                                   const KernelModel& m, Backend backend);

struct FieldSeries {
  Grid grid;
  std::vector<double> times;
  std::vector<std::vector<double>> frames;
  double a = 0.0;
  double mu = 0.0;
  double dt = 0.0;
  int stride = 1;
  Backend backend = Backend::fourier;
  std::string ic;
};

struct EvolveOptions {
  double T = 1.0;
  double dt = 0.01;
  int stride = 0;  // steps between stored frames; 0 keeps at most 500 frames
  Backend backend = Backend::fourier;
  std::string ic = "custom";
};

/// ETDRK4 (Cox-Matthews, coefficients by contour integral) for
/// u_t = u_xx + mu u (1 - phi * u), with u_xx integrated exactly and the
/// nonlinear term de-aliased by the 3/2 rule.
/// Errors: "dt_unstable" (validation) when dt mu max|phi_hat| max(1, sup|u0|)
/// >= 2.7; "blow_up" / "non_finite" (numerical) during the run.
FieldSeries evolve(const Grid& g, const std::vector<double>& u0, const KernelModel& m, double mu,
                   const EvolveOptions& opts);

/// Initial conditions by spec string:
///   const:<v>           u = v
///   cosine:<k>:<amp>    u = 1 + amp cos(k_p x), k_p the grid mode nearest k
///   front               u = 1 + 0.5 cos(k_c x) on a central window of width
///                       L/10 with tanh edges one pattern period wide (two
///                       fronts moving outward)
///   modfront:<eps>:<s>  mirror-symmetric pair of modulated fronts centred
///                       at L/2 +- L/8 (requires mu = mu_c + eps^2)
std::vector<double> initial_condition(const Grid& g, const std::string& spec,
                                      const KernelModel& m, double mu);

struct FrontDiagnostics {
  std::vector<double> times;
  std::vector<double> position;  // rightmost x > L/2 with |u - 1| > eta
  double eta = 0.0;
  double speed = 0.0;            // fitted over the final third of frames
  double wake_amplitude = 0.0;   // (max - min)/2 over the wake window
  double wake_wavenumber = 0.0;  // peak of the Hann-windowed transform
  double wake_lo = 0.0, wake_hi = 0.0;
  double grid_mode = 0.0;        // 2 pi / L
  bool position_monotone = false;      // over frames after the seeding transient
  bool position_monotone_all = false;  // over every frame
  double transient = 0.0;              // first 10% of the run
};

/// Diagnostics of a front moving right from the domain centre. The wake
/// window is the inner half between L/2 and the final front position.
/// Errors: "no_front" (precondition) when |u - 1| never exceeds eta.
FrontDiagnostics measure_front(const FieldSeries& s);

/// Samples of the last frame on [x0, x0 + len).
std::vector<double> window(const FieldSeries& s, double x0, double len);

/// Raw frames as little-endian float64, row-major (frames x N), plus a JSON
/// sidecar {L, N, dt, stride, times, a, mu, backend, ic}. Returns the
/// sidecar path.
std::string write_field_dump(const FieldSeries& s, const std::string& stem);

/// Text script for external plotting of a dump.
std::string plot_script(const std::string& dump_path, const FieldSeries& s);

}  // namespace nlkpp
