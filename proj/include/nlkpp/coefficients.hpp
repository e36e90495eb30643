#pragma once

#include <Eigen/Dense>

#include "nlkpp/dispersion.hpp"
#include "nlkpp/kernel.hpp"

namespace nlkpp {

/// Coefficients of the amplitude equation
///   A_T = zeta A_XX - phi_hat(k_c) A + omega A|A|^2
/// for the complex envelope of v = A e^{i k_c x} + c.c.
struct AmplitudeCoeffs {
  double omega = 0.0;
  double zeta = 0.0;        // 1 + (mu_c/2) phi_hat''(k_c)
  double zeta_form_a = 0.0; // 4 k_c^2 mu_c (3a^2/(a^2+k_c^2)^3 - 2/(1+k_c^2)^3)
  double zeta_form_diff = 0.0;
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double phi_kc = 0.0;

  /// Quadratic model -phi_hat(k_c) eps^2 - zeta delta^2 of the growth rate.
  double lambda_lin(double eps, double delta) const {
    return -phi_kc * eps * eps - zeta * delta * delta;
  }
};

/// Exact growth rate -(k_c+delta)^2 - (mu_c+eps^2) phi_hat(k_c+delta).
double lambda_exact(const CriticalPoint& cp, const KernelModel& m, double eps, double delta);

/// Throws Error{precondition, "h2_violation"} when omega >= 0, zeta <= 0 or
/// the 2k_c resonance denominator 4k_c^2 + mu_c phi_hat(2k_c) vanishes.
/// kappa0 and kappa1 need the exponential family and are left at 0 otherwise.
AmplitudeCoeffs amplitude_coeffs(const CriticalPoint& cp, const KernelModel& m);

/// Coefficients of the traveling-wave reduction at speed s.
struct TWCoeffs {
  double s = 0.0;
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double Delta = 0.0;
  double chi_plus = 0.0;   // NaN when Delta < 0
  double chi_minus = 0.0;
  double s_min = 0.0;
};

TWCoeffs tw_coeffs(const CriticalPoint& cp, const KernelModel& m, double s);

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Three-component (u, v, w) data of the elliptic reformulation, where
/// v = 3a^2 (a^2 - d_xx)^{-1} u and w = -2 (1 - d_xx)^{-1} u.
struct ModeVectors {
  Vec3 E, P1, E0, E1, E2;
  Vec3 Etilde0, Etilde2;
  Mat3 M_c, M_r;
  double k_c = 0.0;

  // Same vectors from direct solves against the assembled matrices.
  Vec3 E0_solve, E1_solve, E2_solve;
  double max_route_diff = 0.0;

  Mat3 L(int j) const { return -(j * k_c) * (j * k_c) * Mat3::Identity() + M_c; }
};

/// N(U) = (u (v + w), 0, 0).
Vec3 quad_n(const Vec3& U);
/// Symmetric difference N(X+Y) - N(X) - N(Y).
Vec3 quad_cross(const Vec3& X, const Vec3& Y);

/// Throws Error{numerical, "resonance"} when L_0 or L_2 has condition number
/// above 1e12, and Error{numerical, "route_mismatch"} when the closed forms
/// and the solves differ by more than 1e-10.
ModeVectors mode_vectors(const CriticalPoint& cp, const KernelModel& m);

struct OmegaReport {
  double closed_form = 0.0;
  double fourier_route = 0.0;   // pairing of the second-order Fourier modes
  double elliptic_route = 0.0;  // -mu_c^2 (Etilde2 + 2 Etilde0) . P1
  double max_diff = 0.0;
};

/// Recomputes omega along three independent routes; throws
/// Error{numerical, "omega_inconsistent"} if they differ by more than tol.
OmegaReport omega_consistency(const CriticalPoint& cp, const KernelModel& m,
                              double tol = 1e-9);

/// The three routes evaluated with mu in place of mu_c and no consistency
/// check. The elliptic route solves against M_c(mu) directly, so the routes
/// only agree at mu = mu_c.
OmegaReport omega_routes(const CriticalPoint& cp, const KernelModel& m, double mu);

}  // namespace nlkpp
