#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nlkpp/coefficients.hpp"
#include "nlkpp/periodic.hpp"

namespace nlkpp {

/// Linearisation about a periodic state acting on e^{i sigma x} V(x), V
/// 2 pi-periodic, in the Fourier basis l = -M..M (index l + M).
struct BlochOperator {
  double sigma = 0.0;
  int M = 0;
  Eigen::MatrixXcd matrix;
};

/// Entries: diagonal -k^2(l+sigma)^2 - mu phi_hat(k(l+sigma)); every (l, m)
/// additionally gets -mu [v_{l-m} phi_hat(k(m+sigma)) + phi_hat(k(l-m)) v_{l-m}].
/// Errors: "truncation" (validation) if M < 4 x the highest significant mode
/// of ps; "unrefined_state" (precondition) if ps.residual >= 1e-8.
BlochOperator assemble_bloch(const PeriodicSolution& ps, const KernelModel& m, double sigma,
                             int M);

/// Eigenvalues sorted by real part, descending.
std::vector<std::complex<double>> bloch_spectrum(const BlochOperator& op);

/// Coefficients of the translation mode d_x v (i l v_l) in the same basis.
Eigen::VectorXcd translation_mode(const PeriodicSolution& ps, int M);

/// Leading-order coefficients of the co-periodic and sideband eigenvalues.
double G00_formula(const CriticalPoint& cp, const AmplitudeCoeffs& ac, double eps, double delta);
double g_formula(const CriticalPoint& cp, const AmplitudeCoeffs& ac, double eps, double delta);

/// Default Bloch parameters: sigma_max {1/4, 1/2, 3/4, 1} with sigma_max a
/// tenth of the sideband width sqrt(2|phi_hat(k_c)| eps^2 / (zeta k_c^2)).
/// The sigma^4 term of the critical branch is comparable to the sigma^2 term
/// at that width, so the quadratic fit needs sigma well inside it.
std::vector<double> default_sigma_grid(const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                                       double eps);
std::vector<double> sigma_grid(double sigma_max);

struct SidebandReport {
  double eps = 0.0;
  double delta = 0.0;
  double g_numeric = 0.0;
  double h_numeric = 0.0;  // sigma^4 coefficient of the fit
  double g_formula = 0.0;
  double fit_residual = 0.0;
  bool unstable_numeric = false;
  bool unstable_formula = false;
  double G00 = 0.0;          // formula
  double G00_numeric = 0.0;  // second eigenvalue at sigma = 0
  double top_sigma0 = 0.0;   // top eigenvalue at sigma = 0
  std::vector<double> sigmas;
  std::vector<double> lambda_c;  // tracked critical eigenvalue (real part)
};

/// Tracks the eigenvalue branch emanating from the translation mode by
/// eigenvector overlap and fits lambda_c(sigma) = g sigma^2 + h sigma^4.
/// Errors: "invalid_sigma" (validation) unless >= 4 values in (0, 0.1];
/// "branch_ambiguous" (numerical) if the two smallest |lambda| at the
/// smallest sigma are within a factor 10.
SidebandReport sideband_curvature(const PeriodicSolution& ps, const CriticalPoint& cp,
                                  const AmplitudeCoeffs& ac, const KernelModel& m,
                                  const std::vector<double>& sigmas, int M = 64);

/// Refined periodic solution at (eps, delta): asymptotic profile + Newton.
PeriodicSolution refined_solution(const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                                  const KernelModel& m, double eps, double delta, int M = 64);

struct BoundaryResult {
  double delta2 = 0.0;          // located zero of g_numeric in delta^2
  double delta2_formula = 0.0;  // -phi_hat(k_c) eps^2 / (3 zeta)
  double rel_error = 0.0;
  int evaluations = 0;
};

/// Bisection in delta^2 for the sign change of g_numeric between delta = 0
/// and hi_frac of the existence bound. sigma_max <= 0 selects the default.
BoundaryResult sideband_boundary(const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                                 const KernelModel& m, double eps, int M = 64,
                                 double sigma_max = 0.0, double hi_frac = 0.6,
                                 double rel_tol = 1e-4);

}  // namespace nlkpp
