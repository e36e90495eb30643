#include "nlkpp/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlkpp/error.hpp"

namespace nlkpp {

BlochOperator assemble_bloch(const PeriodicSolution& ps, const KernelModel& m, double sigma,
                             int M) {
  if (!(ps.residual < 1e-8)) {
    std::ostringstream os;
    os << "periodic state residual " << ps.residual << " too large to linearise about";
    throw Error(ErrorKind::precondition, "unrefined_state", os.str());
  }
  const int top = ps.highest_significant_mode();
  if (M < 4 * top) {
    std::ostringstream os;
    os << "Bloch truncation M = " << M << " below 4x the highest significant mode (" << top
       << ")";
    throw Error(ErrorKind::validation, "truncation", os.str());
  }
  const double k = ps.k, mu = ps.mu;
  const int n = 2 * M + 1;
  BlochOperator op;
  op.sigma = sigma;
  op.M = M;
  op.matrix = Eigen::MatrixXcd::Zero(n, n);
  std::vector<double> phis(n), phil(2 * n - 1);
  for (int l = -M; l <= M; ++l) phis[l + M] = m.fourier(k * (l + sigma), 0);
  for (int d = -2 * M; d <= 2 * M; ++d) phil[d + 2 * M] = m.fourier(k * d, 0);
  for (int l = -M; l <= M; ++l) {
    for (int j = -M; j <= M; ++j) {
      const double v = ps.two_sided(l - j);
      double e = 0.0;
      if (v != 0.0) e = -mu * (v * phis[j + M] + phil[l - j + 2 * M] * v);
      if (l == j) e += -k * k * (l + sigma) * (l + sigma) - mu * phis[l + M];
      op.matrix(l + M, j + M) = e;
    }
  }
  return op;
}

namespace {

bool by_real_desc(const std::complex<double>& a, const std::complex<double>& b) {
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

}  // namespace

std::vector<std::complex<double>> bloch_spectrum(const BlochOperator& op) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.matrix, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::numerical, "eigensolver_failed", "Bloch eigensolver did not converge");
  }
  std::vector<std::complex<double>> ev(es.eigenvalues().data(),
                                       es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), by_real_desc);
  return ev;
}

Eigen::VectorXcd translation_mode(const PeriodicSolution& ps, int M) {
  Eigen::VectorXcd t(2 * M + 1);
  for (int l = -M; l <= M; ++l) t(l + M) = std::complex<double>(0.0, l * ps.two_sided(l));
  return t;
}

double G00_formula(const CriticalPoint& cp, const AmplitudeCoeffs& ac, double eps, double delta) {
  return 2.0 * (cp.phi_kc * eps * eps + ac.zeta * delta * delta);
}

double g_formula(const CriticalPoint& cp, const AmplitudeCoeffs& ac, double eps, double delta) {
  const double G = G00_formula(cp, ac, eps, delta);
  return -cp.k_c * cp.k_c / G * (4.0 * ac.zeta * delta * delta + G) * ac.zeta;
}

std::vector<double> sigma_grid(double sigma_max) {
  return {0.25 * sigma_max, 0.5 * sigma_max, 0.75 * sigma_max, sigma_max};
}

std::vector<double> default_sigma_grid(const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                                       double eps) {
  const double width =
      std::sqrt(2.0 * std::abs(cp.phi_kc) * eps * eps / (ac.zeta * cp.k_c * cp.k_c));
  return sigma_grid(0.1 * width);
}

PeriodicSolution refined_solution(const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                                  const KernelModel& m, double eps, double delta, int M) {
  return newton_refine(asymptotic_profile(cp, ac, m, eps, delta, M), m);
}

SidebandReport sideband_curvature(const PeriodicSolution& ps, const CriticalPoint& cp,
                                  const AmplitudeCoeffs& ac, const KernelModel& m,
                                  const std::vector<double>& sigmas, int M) {
  if (sigmas.size() < 4 ||
      std::any_of(sigmas.begin(), sigmas.end(), [](double s) { return !(s > 0.0 && s <= 0.1); })) {
    throw Error(ErrorKind::validation, "invalid_sigma",
                "need at least 4 Bloch parameters in (0, 0.1]");
  }
  SidebandReport rep;
  rep.eps = ps.eps;
  rep.delta = ps.delta;
  rep.G00 = G00_formula(cp, ac, ps.eps, ps.delta);
  rep.g_formula = g_formula(cp, ac, ps.eps, ps.delta);
  rep.unstable_formula = rep.g_formula > 0.0;

  const auto spec0 = bloch_spectrum(assemble_bloch(ps, m, 0.0, M));
  rep.top_sigma0 = spec0[0].real();
  rep.G00_numeric = spec0[1].real();

  const Eigen::VectorXcd t = translation_mode(ps, M).normalized();
  const double sigma_min = *std::min_element(sigmas.begin(), sigmas.end());
  for (double sigma : sigmas) {
    const auto op = assemble_bloch(ps, m, sigma, M);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.matrix, true);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorKind::numerical, "eigensolver_failed", "Bloch eigensolver did not converge");
    }
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    int best = 0;
    double best_ov = -1.0;
    for (int i = 0; i < vals.size(); ++i) {
      const double ov = std::abs(t.dot(vecs.col(i).normalized()));
      if (ov > best_ov) {
        best_ov = ov;
        best = i;
      }
    }
    if (sigma == sigma_min) {
      std::vector<double> mags(vals.size());
      for (int i = 0; i < vals.size(); ++i) mags[i] = std::abs(vals(i));
      std::sort(mags.begin(), mags.end());
      if (!(mags[1] >= 10.0 * mags[0])) {
        std::ostringstream os;
        os << "critical branch ambiguous at sigma = " << sigma << ": |lambda| = " << mags[0]
           << ", " << mags[1];
        throw Error(ErrorKind::numerical, "branch_ambiguous", os.str());
      }
    }
    rep.sigmas.push_back(sigma);
    rep.lambda_c.push_back(vals(best).real());
  }

  // Least squares for lambda = g s^2 + h s^4, scaled columns.
  const int n = static_cast<int>(rep.sigmas.size());
  const double smax = *std::max_element(rep.sigmas.begin(), rep.sigmas.end());
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    const double r = rep.sigmas[i] / smax;
    A(i, 0) = r * r;
    A(i, 1) = r * r * r * r;
    b(i) = rep.lambda_c[i];
  }
  const Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
  rep.g_numeric = x(0) / (smax * smax);
  rep.h_numeric = x(1) / (smax * smax * smax * smax);
  rep.fit_residual = (A * x - b).cwiseAbs().maxCoeff();
  rep.unstable_numeric = rep.g_numeric > 0.0;
  return rep;
}

BoundaryResult sideband_boundary(const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                                 const KernelModel& m, double eps, int M, double sigma_max,
                                 double hi_frac, double rel_tol) {
  const double bound = -cp.phi_kc * eps * eps / ac.zeta;
  const auto sig = sigma_max > 0.0 ? sigma_grid(sigma_max) : default_sigma_grid(cp, ac, eps);
  BoundaryResult br;
  br.delta2_formula = bound / 3.0;
  auto g_at = [&](double d2) {
    ++br.evaluations;
    const auto ps = refined_solution(cp, ac, m, eps, std::sqrt(d2), M);
    return sideband_curvature(ps, cp, ac, m, sig, M).g_numeric;
  };
  double lo = 0.0, hi = hi_frac * bound;
  const double glo = g_at(lo), ghi = g_at(hi);
  if (!(glo < 0.0 && ghi > 0.0)) {
    std::ostringstream os;
    os << "no sign change of the sideband curvature on [0, " << hi_frac
       << " x bound]: g = " << glo << ", " << ghi;
    throw Error(ErrorKind::numerical, "no_boundary", os.str());
  }
  while (hi - lo > rel_tol * bound) {
    const double mid = 0.5 * (lo + hi);
    if (g_at(mid) < 0.0) lo = mid; else hi = mid;
  }
  br.delta2 = 0.5 * (lo + hi);
  br.rel_error = std::abs(br.delta2 - br.delta2_formula) / br.delta2_formula;
  return br;
}

}  // namespace nlkpp
