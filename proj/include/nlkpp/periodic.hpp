#pragma once

#include <complex>
#include <vector>

#include "nlkpp/coefficients.hpp"
#include "nlkpp/dispersion.hpp"
#include "nlkpp/kernel.hpp"

namespace nlkpp {

/// Stationary periodic state u = 1 + v(x) with v even, written in the
/// rescaled variable x in [0, 2 pi) where the physical wavenumber is k:
///   v(x) = sum_{l=0}^{M} c_l cos(l x).
struct PeriodicSolution {
  double eps = 0.0;
  double delta = 0.0;
  double k = 0.0;
  double mu = 0.0;
  double Gamma = 0.0;  // (phi_hat(k_c) eps^2 + zeta delta^2) / omega
  std::vector<double> coeffs;
  double residual = 0.0;  // max |F_l| of the cosine Galerkin system
  int iterations = 0;
  std::vector<double> residual_history;

  int modes() const { return static_cast<int>(coeffs.size()) - 1; }
  /// Two-sided coefficient v_hat_l for |l| <= M (c_0, c_|l| / 2).
  double two_sided(int l) const;
  /// Largest l with |c_l| above rel * max |c|.
  int highest_significant_mode(double rel = 1e-14) const;
};

/// delta^2 < -phi_hat(k_c) eps^2 / zeta (strict).
bool existence_region(const CriticalPoint& cp, double eps, double delta);

/// Leading-order profile v = 2 sqrt(Gamma) cos x. omega is the cubic
/// coefficient of the complex envelope A of v = A e^{ix} + c.c., so the
/// real cosine amplitude is 2|A|. At Gamma = 0 the trivial state is returned.
/// Throws Error{precondition, "outside_existence_region"} when Gamma < 0.
PeriodicSolution asymptotic_profile(const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                                    const KernelModel& m, double eps, double delta, int M = 64);

/// Cosine Galerkin residual
///   F_l = (-k^2 l^2 - mu phi_hat(k l)) c_l - mu [v (phi_k * v)]_l,  l = 0..M,
/// with the product formed on a 4M-point grid (alias free for l <= M).
std::vector<double> galerkin_residual(const KernelModel& m, double k, double mu,
                                      const std::vector<double>& c);

/// Analytic Jacobian dF_l/dc_j, row-major (M+1) x (M+1).
std::vector<double> galerkin_jacobian(const KernelModel& m, double k, double mu,
                                      const std::vector<double>& c);

/// Residual of the full two-sided complex Galerkin system for coefficients
/// vhat[l + M], l = -M..M (no evenness assumed). Returns max |F_l|.
double full_galerkin_residual(const KernelModel& m, double k, double mu,
                              const std::vector<std::complex<double>>& vhat);

/// Two-sided coefficients of v(x + tau).
std::vector<std::complex<double>> shifted_coefficients(const PeriodicSolution& ps, double tau);

struct NewtonOptions {
  int max_iter = 25;
  double tol = 1e-12;
};

/// Newton iteration on the cosine Galerkin system. Evenness removes the
/// translation mode, so the Jacobian is regular away from onset.
/// Errors: "newton_no_convergence", "jacobian_singular" (numerical).
PeriodicSolution newton_refine(const PeriodicSolution& init, const KernelModel& m,
                               const NewtonOptions& opts = {});

/// Same solution with the mode count changed (truncate or zero pad).
PeriodicSolution with_modes(const PeriodicSolution& ps, int M);

/// Samples u = 1 + v at n points over one physical period [0, 2 pi / k).
struct ProfileSamples {
  std::vector<double> x;
  std::vector<double> u;
};
ProfileSamples sample_profile(const PeriodicSolution& ps, int n = 512);

/// u = 1 + v at physical position x.
double evaluate(const PeriodicSolution& ps, double x);

}  // namespace nlkpp
