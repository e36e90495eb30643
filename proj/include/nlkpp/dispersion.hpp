#pragma once

#include <span>
#include <vector>

#include "nlkpp/kernel.hpp"

namespace nlkpp {

/// Onset of the Turing instability of u = 1: the double root (k_c, mu_c) of
/// the dispersion relation together with the kernel data derived there.
struct CriticalPoint {
  double k_c = 0.0;
  double mu_c = 0.0;
  double phi_kc = 0.0;     // phi_hat(k_c) < 0
  double phi_2kc = 0.0;    // phi_hat(2 k_c)
  double phi_dd_kc = 0.0;  // phi_hat''(k_c)
  double zeta = 0.0;       // 1 + (mu_c/2) phi_hat''(k_c) > 0
  // Residuals recorded by the solver.
  double d_residual = 0.0;     // d(0, k_c, mu_c)
  double dk_residual = 0.0;    // d_k d(0, k_c, mu_c)
  double h_residual = 0.0;     // 2 phi_hat - k phi_hat' at k_c
};

/// d(lambda, k, mu) = -k^2 - mu phi_hat(k) - lambda.
double dispersion_eval(const KernelModel& m, double lambda, double k, double mu);

/// Partial derivatives of d in k (orders 1 and 2).
double dispersion_dk(const KernelModel& m, double k, double mu);
double dispersion_dkk(const KernelModel& m, double k, double mu);

/// Growth rate lambda(k) = -k^2 - mu phi_hat(k) at every grid point.
std::vector<double> growth_rate_curve(const KernelModel& m, double mu,
                                      std::span<const double> k_grid);

struct CriticalPointOptions {
  double k_max = 20.0;
  int scan_points = 100000;
  double bisection_tol = 1e-13;
  int newton_steps = 5;
};

/// Solves h(k) = 2 phi_hat(k) - k phi_hat'(k) = 0 on (0, k_max] (obtained by
/// eliminating mu_c = -k_c^2/phi_hat(k_c) between d = 0 and d_k = 0), then
/// verifies every hypothesis on the onset.
///
/// Errors (all ErrorKind::precondition): "no_critical_root" when h has no
/// sign change on the scan, "critical_not_unique" when it has several,
/// "h2_violation" when phi_hat(k_c) >= 0 or zeta <= 0.
CriticalPoint critical_point(const KernelModel& m, const CriticalPointOptions& opts = {});

}  // namespace nlkpp
