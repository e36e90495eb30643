#include "nlkpp/twsystem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlkpp/error.hpp"
#include "nlkpp/fit.hpp"

namespace nlkpp {

namespace {

constexpr cplx I(0.0, 1.0);

cplx poly_eval(const std::array<cplx, 7>& c, cplx z, cplx* dp = nullptr) {
  cplx p = c[6], d = 0.0;
  for (int j = 5; j >= 0; --j) {
    d = d * z + p;
    p = p * z + c[j];
  }
  if (dp) *dp = d;
  return p;
}

// Index of the entry of v nearest to z.
template <class V>
int nearest(const V& v, cplx z) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(v.size()); ++i) {
    if (std::abs(v[i] - z) < std::abs(v[best] - z)) best = i;
  }
  return best;
}

}  // namespace

Mat6 build_Mn(const CriticalPoint& cp, const KernelModel& m, int n, double eps, double s) {
  const double a2 = m.a() * m.a();
  const double k = cp.k_c, nk2 = n * n * k * k;
  const double mu = cp.mu_c + eps * eps;
  const cplx d = 2.0 * I * double(n) * k;
  Mat6 M = Mat6::Zero();
  M(0, 1) = 1.0;
  M(1, 0) = nk2;
  M(1, 1) = d - eps * s;
  M(1, 2) = mu;
  M(1, 4) = mu;
  M(2, 3) = 1.0;
  M(3, 0) = -3.0 * a2;
  M(3, 2) = a2 + nk2;
  M(3, 3) = d;
  M(4, 5) = 1.0;
  M(5, 0) = 2.0;
  M(5, 4) = 1.0 + nk2;
  M(5, 5) = d;
  return M;
}

std::array<cplx, 7> char_poly(const Mat6& A) {
  std::array<cplx, 7> c{};
  c[6] = 1.0;
  Mat6 Mk = Mat6::Zero();
  for (int k = 1; k <= 6; ++k) {
    Mk = A * Mk + c[7 - k] * Mat6::Identity();
    c[6 - k] = -(A * Mk).trace() / double(k);
  }
  return c;
}

std::array<cplx, 6> poly_roots(const std::array<cplx, 7>& c) {
  Mat6 C = Mat6::Zero();
  for (int i = 1; i < 6; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < 6; ++i) C(i, 5) = -c[i];
  Eigen::ComplexEigenSolver<Mat6> es(C, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical, "root_finder_failed", "companion eigensolve failed");
  }
  std::array<cplx, 6> r;
  for (int i = 0; i < 6; ++i) {
    cplx z = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      cplx dp;
      const cplx p = poly_eval(c, z, &dp);
      if (p == 0.0 || dp == 0.0) break;
      const cplx z1 = z - p / dp;
      if (!(std::abs(poly_eval(c, z1)) < std::abs(p))) break;
      z = z1;
    }
    r[i] = z;
  }
  return r;
}

cplx char_poly_factored(const CriticalPoint& cp, const KernelModel& m, int n, cplx lambda) {
  const double a2 = m.a() * m.a(), k = cp.k_c, k2 = k * k;
  const cplx q = lambda * lambda - 2.0 * I * double(n) * k * lambda - 1.0 - a2 -
                 double(n * n) * k2 - 2.0 * k2;
  const cplx r1 = lambda - I * double(n - 1) * k;
  const cplx r2 = lambda - I * double(n + 1) * k;
  return q * r1 * r1 * r2 * r2;
}

std::array<cplx, 6> spectrum_closed(const CriticalPoint& cp, const KernelModel& m, int n) {
  const double a2 = m.a() * m.a(), k = cp.k_c;
  const double b = std::sqrt(1.0 + a2 + 2.0 * k * k);
  const cplx lm = I * double(n - 1) * k, lp = I * double(n + 1) * k, c = I * double(n) * k;
  return {lm, lm, lp, lp, c + b, c - b};
}

std::array<cplx, 6> spectrum_Mn(const CriticalPoint& cp, const KernelModel& m, int n, double eps,
                                double s) {
  if (eps == 0.0) return spectrum_closed(cp, m, n);
  return poly_roots(char_poly(build_Mn(cp, m, n, eps, s)));
}

cplx sqrt_split_coefficient(const CriticalPoint& cp, const KernelModel& m, double s, int j) {
  const TWCoeffs tw = tw_coeffs(cp, m, s);
  return std::sqrt(-I * tw.alpha1 * double(j) * cp.k_c / tw.alpha2);
}

SpectralGapReport spectral_gap_check(const CriticalPoint& cp, const KernelModel& m, double eps,
                                     double s, int n_max) {
  const TWCoeffs tw = tw_coeffs(cp, m, s);
  if (!(tw.Delta > 0.0)) {
    throw Error(ErrorKind::precondition, "delta_nonpositive",
                "spectral gap requires Delta(s) > 0, i.e. s > s_min");
  }
  SpectralGapReport rep;
  rep.eps = eps;
  rep.s = s;
  rep.n_max = n_max;
  std::vector<double> mags;
  for (int n = 0; n <= n_max; ++n) {
    for (const cplx& l : spectrum_Mn(cp, m, n, eps, s)) {
      rep.entries.push_back({n, l, false});
      mags.push_back(std::max(std::abs(l.real()), 1e-300));
    }
  }
  // Central eigenvalues have |Re| = O(eps), the rest |Re| >= O(sqrt(eps));
  // eps^{3/4} separates the two scales as eps -> 0.
  const double threshold = std::pow(eps, 0.75);
  double max_c = 0.0, min_h = INFINITY;
  for (size_t i = 0; i < rep.entries.size(); ++i) {
    auto& e = rep.entries[i];
    e.central = mags[i] < threshold;
    const int mult = e.n == 0 ? 1 : 2;
    if (e.central) {
      rep.central_count += mult;
      max_c = std::max(max_c, mags[i]);
    } else {
      min_h = std::min(min_h, mags[i]);
      rep.max_hyperbolic_re = std::max(rep.max_hyperbolic_re, mags[i]);
    }
  }
  rep.d0 = max_c / eps;
  rep.d1 = min_h / std::sqrt(eps);
  if (!(rep.d0 * eps < rep.d1 * std::sqrt(eps)) || rep.central_count != 4) {
    std::ostringstream os;
    os << "spectral classification failed: central count " << rep.central_count
       << ", d0 eps = " << rep.d0 * eps << ", d1 sqrt(eps) = " << rep.d1 * std::sqrt(eps);
    throw Error(ErrorKind::numerical, "classification_failed", os.str());
  }
  return rep;
}

cplx inner(const Vec6& u, const Vec6& v) { return (u.array() * v.conjugate().array()).sum(); }

JordanData jordan_chain(const CriticalPoint& cp, const KernelModel& m, double s) {
  const double a2 = m.a() * m.a(), k = cp.k_c, k2 = k * k, mu = cp.mu_c;
  const double pa = a2 + k2, pb = 1.0 + k2;
  const double fv = m.fourier_v(k), fw = m.fourier_w(k);
  const AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
  const TWCoeffs tw = tw_coeffs(cp, m, s);

  JordanData jd;
  jd.kappa0 = ac.kappa0;
  jd.kappa1 = ac.kappa1;
  jd.chi_plus = tw.chi_plus;
  jd.chi_minus = tw.chi_minus;

  jd.e0 << 1.0, 0.0, fv, 0.0, fw, 0.0;
  jd.e1 << 0.0, 1.0, -2.0 * I * k / pa * fv, fv, -2.0 * I * k / pb * fw, fw;
  jd.e0s << -2.0 * I * k * pb / mu, -pb / mu, 2.0 * I * k * pb / pa, pb / pa, 2.0 * I * k, 1.0;
  jd.e0s /= jd.kappa0;
  jd.e1s << -(1.0 + 5.0 * k2) / mu, 2.0 * I * k / mu,
      (a2 + 5.0 * a2 * k2 - 3.0 * k2 + k2 * k2) / (pa * pa), 2.0 * I * k * (1.0 - a2) / (pa * pa),
      1.0, 0.0;
  jd.e1s /= jd.kappa1;
  jd.e1s_defect = inner(jd.e1, jd.e1s);
  jd.e1s += -std::conj(jd.e1s_defect) * jd.e0s;

  const Mat6 M0 = build_Mn(cp, m, 1, 0.0, s);
  const Mat6 M0a = M0.adjoint();
  jd.chain_residual = std::max({(M0 * jd.e0).cwiseAbs().maxCoeff(),
                                (M0 * jd.e1 - jd.e0).cwiseAbs().maxCoeff(),
                                (M0a * jd.e0s).cwiseAbs().maxCoeff(),
                                (M0a * jd.e1s - jd.e0s).cwiseAbs().maxCoeff()});
  jd.biorth_residual = std::max({std::abs(inner(jd.e0, jd.e0s)),
                                 std::abs(inner(jd.e0, jd.e1s) - 1.0),
                                 std::abs(inner(jd.e1, jd.e1s)),
                                 std::abs(inner(jd.e1, jd.e0s) - 1.0)});
  if (jd.biorth_residual > 1e-10 || jd.chain_residual > 1e-10) {
    std::ostringstream os;
    os << "Jordan chain check failed: chain residual " << jd.chain_residual
       << ", biorthogonality residual " << jd.biorth_residual;
    throw Error(ErrorKind::numerical, "biorthogonality", os.str());
  }
  return jd;
}

CentralPair central_pair(const CriticalPoint& cp, const KernelModel& m, double eps, double s) {
  const TWCoeffs tw = tw_coeffs(cp, m, s);
  const JordanData jd = jordan_chain(cp, m, s);
  const Mat6 M = build_Mn(cp, m, 1, eps, s);
  Eigen::ComplexEigenSolver<Mat6> es(M, true);
  Eigen::ComplexEigenSolver<Mat6> esa(M.adjoint(), true);
  if (es.info() != Eigen::Success || esa.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical, "eigensolver_failed", "M_1 eigensolve failed");
  }
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + 6);
  const int ip = nearest(ev, eps * tw.chi_plus);
  const int im = nearest(ev, eps * tw.chi_minus);
  if (ip == im || std::abs(ev[ip] - ev[im]) < 1e-10) {
    throw Error(ErrorKind::numerical, "pairing_ambiguous",
                "central eigenvalues of M_1 not resolved");
  }
  CentralPair out;
  out.lambda_plus = ev[ip];
  out.lambda_minus = ev[im];
  // e0 component of phi in the biorthogonal basis is <phi, e1*>.
  out.phi_plus = es.eigenvectors().col(ip);
  out.phi_plus /= inner(out.phi_plus, jd.e1s);
  out.phi_minus = es.eigenvectors().col(im);
  out.phi_minus /= inner(out.phi_minus, jd.e1s);
  return out;
}

InnerProductFit inner_product_asymptotics(const CriticalPoint& cp, const KernelModel& m, double s,
                                          const std::vector<double>& eps_list) {
  if (eps_list.size() < 3 ||
      !std::is_sorted(eps_list.rbegin(), eps_list.rend(), std::less_equal<double>()) ||
      eps_list.back() <= 0.0) {
    throw Error(ErrorKind::validation, "invalid_eps_list",
                "need >= 3 strictly decreasing positive eps values");
  }
  const TWCoeffs tw = tw_coeffs(cp, m, s);
  if (!(tw.Delta > 0.0)) {
    throw Error(ErrorKind::precondition, "delta_nonpositive", "pairing requires Delta(s) > 0");
  }
  const JordanData jd = jordan_chain(cp, m, s);
  InnerProductFit fit;
  fit.predicted = std::sqrt(tw.Delta) / tw.alpha2;
  fit.limit_pairing = inner(jd.e0, jd.e0s);
  for (double eps : eps_list) {
    const Mat6 M = build_Mn(cp, m, 1, eps, s);
    const CentralPair cpair = central_pair(cp, m, eps, s);
    Eigen::ComplexEigenSolver<Mat6> esa(M.adjoint(), true);
    std::vector<cplx> eva(esa.eigenvalues().data(), esa.eigenvalues().data() + 6);
    const int jp = nearest(eva, std::conj(cpair.lambda_plus));
    const int jm = nearest(eva, std::conj(cpair.lambda_minus));
    if (jp == jm) {
      throw Error(ErrorKind::numerical, "pairing_ambiguous", "adjoint eigenvalues not resolved");
    }
    // e0* component of psi is <psi, e1>.
    Vec6 psi_p = esa.eigenvectors().col(jp);
    psi_p /= inner(psi_p, jd.e1);
    Vec6 psi_m = esa.eigenvectors().col(jm);
    psi_m /= inner(psi_m, jd.e1);
    fit.eps.push_back(eps);
    fit.pair_plus.push_back(inner(psi_p, cpair.phi_plus));
    fit.pair_minus.push_back(inner(psi_m, cpair.phi_minus));
    fit.cross.push_back(inner(psi_p, cpair.phi_minus));
  }
  const int n = static_cast<int>(fit.eps.size());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd bp(n), bm(n);
  for (int i = 0; i < n; ++i) {
    A(i, 0) = fit.eps[i];
    A(i, 1) = fit.eps[i] * fit.eps[i];
    bp(i) = fit.pair_plus[i].real();
    bm(i) = fit.pair_minus[i].real();
    fit.cross_scaled = std::max(fit.cross_scaled, std::abs(fit.cross[i]) / (fit.eps[i] * fit.eps[i]));
  }
  const auto qr = A.colPivHouseholderQr();
  fit.slope_plus = qr.solve(bp)(0);
  fit.slope_minus = qr.solve(bm)(0);
  fit.rel_error_plus = std::abs(fit.slope_plus - fit.predicted) / fit.predicted;
  return fit;
}

cplx quadratic_coefficient(const Vec6& phi_plus, const Vec6& phi_minus, const MultiIndex& mi,
                           int n) {
  const Vec6 f[4] = {phi_plus, phi_minus, phi_plus.conjugate(), phi_minus.conjugate()};
  const int mode[4] = {1, 1, -1, -1};
  int picks[2], np = 0;
  for (int j = 0; j < 4; ++j) {
    for (int r = 0; r < mi[j]; ++r) picks[np++] = j;
  }
  const Vec6& A = f[picks[0]];
  const Vec6& B = f[picks[1]];
  if (mode[picks[0]] + mode[picks[1]] != n) return 0.0;
  if (picks[0] == picks[1]) return A(0) * (A(2) + A(4));
  return A(0) * (B(2) + B(4)) + B(0) * (A(2) + A(4));
}

ThetaResult theta_quadratic(const CriticalPoint& cp, const KernelModel& m, double eps, double s,
                            const MultiIndex& mi, int n) {
  if (mi[0] < 0 || mi[1] < 0 || mi[2] < 0 || mi[3] < 0 || mi[0] + mi[1] + mi[2] + mi[3] != 2) {
    throw Error(ErrorKind::validation, "invalid_multi_index", "multi-index must have |m| = 2");
  }
  if (n < 0 || n > 2) throw Error(ErrorKind::validation, "invalid_mode", "n must be 0, 1 or 2");
  const CentralPair c = central_pair(cp, m, eps, s);
  const JordanData jd = jordan_chain(cp, m, s);
  const double k = cp.k_c;

  ThetaResult th;
  const cplx lam[4] = {c.lambda_plus, c.lambda_minus, std::conj(c.lambda_plus),
                       std::conj(c.lambda_minus)};
  th.Lambda = 0.0;
  for (int j = 0; j < 4; ++j) th.Lambda += double(mi[j]) * lam[j];
  th.N = quadratic_coefficient(c.phi_plus, c.phi_minus, mi, n);
  th.N0 = quadratic_coefficient(jd.e0, jd.e0, mi, n);

  const Mat6 M = build_Mn(cp, m, n, eps, s);
  const Mat6 A = M - th.Lambda * Mat6::Identity();
  if (n == 1) {
    Eigen::JacobiSVD<Mat6> svd(A, Eigen::ComputeFullV);
    th.solve = svd.matrixV().col(5);
    th.solve /= th.solve(0);
    th.closed_form = jd.e0;
  } else {
    for (const cplx& l : spectrum_Mn(cp, m, n, eps, s)) {
      if (std::abs(l - th.Lambda) < 1e-8) {
        throw Error(ErrorKind::numerical, "lambda_collision",
                    "Lambda_m lies on the spectrum of M_n");
      }
    }
    Vec6 rhs = Vec6::Zero();
    rhs(1) = (cp.mu_c + eps * eps) * th.N;
    th.solve = A.fullPivLu().solve(rhs);
    if (n == 0) {
      th.closed_form << 1.0, 0.0, 3.0, 0.0, -2.0, 0.0;
      th.closed_form *= th.N0;
    } else {
      const double k2 = 2.0 * k;
      th.closed_form << 1.0, 0.0, m.fourier_v(k2), 0.0, m.fourier_w(k2), 0.0;
      th.closed_form *= cp.mu_c / (4.0 * k * k + cp.mu_c * cp.phi_2kc) * th.N0;
    }
  }
  th.diff = (th.solve - th.closed_form).cwiseAbs().maxCoeff();
  return th;
}

SplittingFit eigen_splitting(const CriticalPoint& cp, const KernelModel& m, double s,
                             const std::vector<double>& eps_list) {
  if (eps_list.size() < 2) {
    throw Error(ErrorKind::validation, "invalid_eps_list", "need at least two eps values");
  }
  const TWCoeffs tw = tw_coeffs(cp, m, s);
  SplittingFit out;
  out.eps = eps_list;
  auto nearest = [](const std::array<cplx, 6>& sp, cplx target) {
    double d = std::numeric_limits<double>::infinity();
    for (const cplx& l : sp) d = std::min(d, std::abs(l - target));
    return d;
  };
  for (double e : eps_list) {
    if (!(e > 0.0)) throw Error(ErrorKind::validation, "invalid_eps_list", "eps must be positive");
    const auto sp1 = spectrum_Mn(cp, m, 1, e, s);
    out.dev_plus.push_back(nearest(sp1, e * tw.chi_plus));
    out.dev_minus.push_back(nearest(sp1, e * tw.chi_minus));
    out.split0.push_back(nearest(spectrum_Mn(cp, m, 0, e, s), cplx(0.0, cp.k_c)));
    out.split2.push_back(nearest(spectrum_Mn(cp, m, 2, e, s), cplx(0.0, 3.0 * cp.k_c)));
  }
  out.order_plus = loglog_order(out.eps, out.dev_plus);
  out.order_minus = loglog_order(out.eps, out.dev_minus);
  out.order_split0 = loglog_order(out.eps, out.split0);
  out.order_split2 = loglog_order(out.eps, out.split2);
  return out;
}

}  // namespace nlkpp
