#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "nlkpp/coefficients.hpp"
#include "nlkpp/dispersion.hpp"
#include "nlkpp/kernel.hpp"

namespace nlkpp {

using cplx = std::complex<double>;
using Mat6 = Eigen::Matrix<cplx, 6, 6>;
using Vec6 = Eigen::Matrix<cplx, 6, 1>;

/// Spatial-dynamics block for Fourier mode n of a wave moving at speed
/// eps*s, acting on X_n = (W^u, W^u', W^v, W^v', W^w, W^w'):
///   row 2: [n^2 k_c^2, 2 i n k_c - eps s, mu_c + eps^2, 0, mu_c + eps^2, 0]
///   row 4: [-3a^2, 0, a^2 + n^2 k_c^2, 2 i n k_c, 0, 0]
///   row 6: [2, 0, 0, 0, 1 + n^2 k_c^2, 2 i n k_c]
/// Rows 1, 3, 5 are the derivative shifts. Negative n gives conj(M_{-n}).
Mat6 build_Mn(const CriticalPoint& cp, const KernelModel& m, int n, double eps, double s);

/// Monic characteristic polynomial det(lambda I - A), coefficients
/// c[0..6] of lambda^0..lambda^6 (Faddeev-LeVerrier).
std::array<cplx, 7> char_poly(const Mat6& A);

/// Roots of a monic degree-6 polynomial: companion-matrix eigenvalues
/// polished by Newton on the polynomial.
std::array<cplx, 6> poly_roots(const std::array<cplx, 7>& c);

/// Factored form (lambda^2 - 2ink lambda - 1 - a^2 - n^2k^2 - 2k^2)
/// (lambda - i(n-1)k)^2 (lambda - i(n+1)k)^2 of the eps = 0 polynomial.
cplx char_poly_factored(const CriticalPoint& cp, const KernelModel& m, int n, cplx lambda);

/// Exact eps = 0 spectrum {i(n-1)k x2, i(n+1)k x2, ink +- sqrt(1+a^2+2k^2)}.
std::array<cplx, 6> spectrum_closed(const CriticalPoint& cp, const KernelModel& m, int n);

/// Spectrum of M_n^eps: closed form at eps = 0, polynomial roots otherwise.
/// Errors: "root_finder_failed" (numerical).
std::array<cplx, 6> spectrum_Mn(const CriticalPoint& cp, const KernelModel& m, int n,
                                double eps, double s);

/// Leading sqrt(eps) splitting z = sqrt(-i alpha1 j k_c / alpha2) of the
/// double root at i j k_c (j = n +- 1), principal branch; the pair is +-z.
cplx sqrt_split_coefficient(const CriticalPoint& cp, const KernelModel& m, double s, int j);

struct SpectralEntry {
  int n = 0;
  cplx lambda;
  bool central = false;
};

struct SpectralGapReport {
  double eps = 0.0;
  double s = 0.0;
  int n_max = 0;
  int central_count = 0;  // with multiplicity over n in Z (n >= 1 counted twice)
  double d0 = 0.0;        // max central |Re| / eps
  double d1 = 0.0;        // min hyperbolic |Re| / sqrt(eps)
  double max_hyperbolic_re = 0.0;
  std::vector<SpectralEntry> entries;
};

/// Classifies the spectra of all blocks n = 0..n_max as central when
/// |Re(lambda)| < eps^{3/4}, the geometric mean of the two scales. Errors: "delta_nonpositive" (precondition) when Delta(s) <= 0;
/// "classification_failed" (numerical) when the split does not leave
/// d0 eps < d1 sqrt(eps) or the central count is not 4.
SpectralGapReport spectral_gap_check(const CriticalPoint& cp, const KernelModel& m, double eps,
                                     double s, int n_max);

/// Deviations of the block spectra from their leading-order predictions:
/// the n = 1 central pair against eps chi+-, and for n = 0, 2 the distance of
/// the eigenvalue nearest i (n+1) k_c from that point (a sqrt(eps) split).
struct SplittingFit {
  std::vector<double> eps;
  std::vector<double> dev_plus, dev_minus;
  std::vector<double> split0, split2;
  double order_plus = 0.0, order_minus = 0.0;
  double order_split0 = 0.0, order_split2 = 0.0;
};
SplittingFit eigen_splitting(const CriticalPoint& cp, const KernelModel& m, double s,
                             const std::vector<double>& eps_list);

/// <u, v> = sum u_i conj(v_i).
cplx inner(const Vec6& u, const Vec6& v);

/// Jordan chain of M_1^0 at eigenvalue 0 and its adjoint chain.
struct JordanData {
  Vec6 e0, e1, e0s, e1s;
  double kappa0 = 0.0;
  double kappa1 = 0.0;
  double chi_plus = 0.0;
  double chi_minus = 0.0;
  cplx e1s_defect;            // <e1, e1*> of the uncorrected closed form
  double chain_residual = 0.0;
  double biorth_residual = 0.0;
};

/// Closed-form vectors. The closed-form e1* has <e1, e1*> != 0; it is
/// corrected by adding t e0* with t = -conj(<e1, e1*>), which leaves the
/// adjoint chain and the other pairings intact.
/// Errors: "biorthogonality" (numerical) above 1e-10.
JordanData jordan_chain(const CriticalPoint& cp, const KernelModel& m, double s);

struct InnerProductFit {
  std::vector<double> eps;
  std::vector<cplx> pair_plus;   // <psi+, phi+>
  std::vector<cplx> pair_minus;  // <psi-, phi->
  std::vector<cplx> cross;       // <psi+, phi->
  double slope_plus = 0.0;
  double slope_minus = 0.0;
  double predicted = 0.0;        // sqrt(Delta) / alpha2
  double rel_error_plus = 0.0;
  double cross_scaled = 0.0;     // max |<psi+, phi->| / eps^2
  cplx limit_pairing;            // <e0, e0*>
};

/// Eigenvectors phi+- of M_1^eps and psi+- of its adjoint, scaled so their
/// e0 (resp. e0*) components are 1, paired; the linear coefficient of
/// pairing = A eps + B eps^2 is fitted. Errors: "invalid_eps_list"
/// (validation), "pairing_ambiguous" (numerical).
InnerProductFit inner_product_asymptotics(const CriticalPoint& cp, const KernelModel& m, double s,
                                          const std::vector<double>& eps_list);

/// Central eigenpairs of M_1^eps nearest eps chi+- with the e0 gauge.
struct CentralPair {
  cplx lambda_plus, lambda_minus;
  Vec6 phi_plus, phi_minus;
};
CentralPair central_pair(const CriticalPoint& cp, const KernelModel& m, double eps, double s);

using MultiIndex = std::array<int, 4>;  // powers of x+, x-, conj x+, conj x-

/// Second-component coefficient of the monomial x^m in N_n(x+ phi+ + x- phi- + c.c.).
cplx quadratic_coefficient(const Vec6& phi_plus, const Vec6& phi_minus, const MultiIndex& mi,
                           int n);

struct ThetaResult {
  Vec6 solve;
  Vec6 closed_form;
  cplx N;    // coefficient at eps
  cplx N0;   // same with phi+- -> e0
  cplx Lambda;
  double diff = 0.0;  // max |solve - closed_form|
};

/// Quadratic centre-manifold coefficient for mode n in {0, 1, 2}:
/// (M_n - Lambda_m) theta = (mu_c + eps^2)(0, N, 0, 0, 0, 0) for n = 0, 2;
/// for n = 1 the homogeneous equation, solved by the smallest singular
/// vector scaled to first component 1. Errors: "invalid_multi_index"
/// (validation), "lambda_collision" (numerical) within 1e-8 of the spectrum.
ThetaResult theta_quadratic(const CriticalPoint& cp, const KernelModel& m, double eps, double s,
                            const MultiIndex& mi, int n);

}  // namespace nlkpp
