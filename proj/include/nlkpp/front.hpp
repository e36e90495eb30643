#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nlkpp/coefficients.hpp"
#include "nlkpp/dispersion.hpp"
#include "nlkpp/kernel.hpp"

namespace nlkpp {

enum class ODEForm { alpha, gl };

/// Leading-order travelling-envelope system q' = p,
///   gl:    p' = (phi_hat(k_c) q - s p - omega q|q|^2) / zeta
///   alpha: p' = (-alpha0 q - alpha1 p + c3 q|q|^2) / alpha2,
///          c3 = omega (1+k_c^2) alpha2 / (mu_c kappa0)
/// in the slow comoving variable Z = eps (x - eps s t).
struct ReducedODE {
  ODEForm form = ODEForm::gl;
  double s = 0.0;
  double phi = 0.0;
  double zeta = 0.0;
  double omega = 0.0;
  double alpha0 = 0.0, alpha1 = 0.0, alpha2 = 0.0, c3 = 0.0;

  static ReducedODE make(const CriticalPoint& cp, const KernelModel& m, double s,
                         ODEForm form = ODEForm::gl);

  /// p' for real (q, p).
  double dp(double q, double p) const;
  /// p' for the complex system.
  std::complex<double> dp(std::complex<double> q, std::complex<double> p) const;

  /// Field written as p' = lin q - damp p + cub q|q|^2 in the active form.
  double lin() const;
  double damp() const;
  double cub() const;

  /// sqrt(-lin/cub), from the active form's own coefficients.
  double q_star() const { return std::sqrt(-lin() / cub()); }
  double s_min() const { return std::sqrt(-4.0 * phi * zeta); }
  /// V = zeta p^2/2 - phi q^2/2 + omega q^4/4, dV/dZ = -s p^2 on orbits.
  double lyapunov(double q, double p) const;
};

struct FixedPoint {
  std::string name;
  double q = 0.0;
  double p = 0.0;
  std::vector<std::complex<double>> eig_closed;   // real 4D (Re q, Im q, Re p, Im p)
  std::vector<std::complex<double>> eig_numeric;  // from the numeric 4D Jacobian
  std::vector<double> eig_planar;                 // real planar restriction
  double max_diff = 0.0;
};

/// Origin and +-q* with closed-form and numeric linearisations.
std::vector<FixedPoint> fixed_points(const ReducedODE& ode);

struct FrontProfile {
  double s = 0.0;
  double h = 0.0;
  std::vector<double> Z, q, p;
  double shoot_residual = 0.0;
  double q_star = 0.0;
  double chi_plus = 0.0;  // slow decay rate at the origin
  bool monotone = false;
  double max_dVdZ = 0.0;     // max of the discrete dV/dZ along the orbit (<= 0)
  double dV_residual = 0.0;  // max |central-difference dV/dZ + s p^2|
};

struct ShootOptions {
  double h = 0.05;
  double tol = 1e-8;
  double eta_rel = 1e-8;
  double z_max = 0.0;  // <= 0: 40 / |chi+|
};

/// Integrates from q* along its unstable direction (toward the origin) with
/// classical RK4 until |(q, p)| < tol. Errors: "speed_below_min"
/// (precondition) when s <= s_min; "orbit_escaped" (numerical) when the
/// orbit leaves |q| <= 2q*, |p| <= 2q* s/zeta; "shoot_not_converged"
/// (numerical) past Z_max.
FrontProfile shoot_heteroclinic(const ReducedODE& ode, const ShootOptions& opts = {});

/// One RK4 step of the complex field.
std::pair<std::complex<double>, std::complex<double>> rk4_step_complex(
    const ReducedODE& ode, std::complex<double> q, std::complex<double> p, double h);

/// u(t, x) = 1 + 2 eps A(eps (x - x0 - eps s t)) cos((k_c + delta) x), where
/// A is the front envelope rescaled to the periodic amplitude at (eps, delta)
/// and shifted so that A = q*/2 at Z = 0. The factor 2 converts the complex
/// envelope into the cosine amplitude.
class ModulatedFront {
 public:
  ModulatedFront(FrontProfile fp, const CriticalPoint& cp, const AmplitudeCoeffs& ac, double eps,
                 double delta, double x0 = 0.0);

  double operator()(double t, double x) const;
  /// Envelope A(Z) with constant continuation behind and exponential tail ahead.
  double envelope(double Z) const;
  double speed() const { return eps_ * fp_.s; }
  double wake_amplitude() const { return 2.0 * eps_ * scale_ * fp_.q_star; }
  double wavenumber() const { return k_; }

 private:
  FrontProfile fp_;
  double eps_, k_, x0_, scale_, z_shift_;
};

/// Region check shared with the periodic module; throws
/// Error{precondition, "outside_existence_region"}.
ModulatedFront assemble_modulated_front(const FrontProfile& fp, const CriticalPoint& cp,
                                        const AmplitudeCoeffs& ac, double eps, double delta,
                                        double x0 = 0.0);

}  // namespace nlkpp
