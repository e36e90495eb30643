#include "nlkpp/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "fft.hpp"
#include "nlkpp/error.hpp"

namespace nlkpp {

double PeriodicSolution::two_sided(int l) const {
  const int a = std::abs(l);
  if (a > modes()) return 0.0;
  return a == 0 ? coeffs[0] : 0.5 * coeffs[a];
}

int PeriodicSolution::highest_significant_mode(double rel) const {
  double mx = 0.0;
  for (double c : coeffs) mx = std::max(mx, std::abs(c));
  if (mx == 0.0) return 0;
  int top = 0;
  for (int l = 0; l <= modes(); ++l) {
    if (std::abs(coeffs[l]) > rel * mx) top = l;
  }
  return top;
}

bool existence_region(const CriticalPoint& cp, double eps, double delta) {
  return delta * delta < -cp.phi_kc * eps * eps / cp.zeta;
}

PeriodicSolution asymptotic_profile(const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                                    const KernelModel& m, double eps, double delta, int M) {
  if (M < 2) throw Error(ErrorKind::validation, "invalid_modes", "mode count must be >= 2");
  PeriodicSolution ps;
  ps.eps = eps;
  ps.delta = delta;
  ps.k = cp.k_c + delta;
  ps.mu = cp.mu_c + eps * eps;
  const double num = cp.phi_kc * eps * eps + ac.zeta * delta * delta;
  ps.Gamma = num / ac.omega;
  if (ps.Gamma < 0.0) {
    std::ostringstream os;
    os << "(eps, delta) = (" << eps << ", " << delta
       << ") lies outside the existence band delta^2 < " << -cp.phi_kc * eps * eps / ac.zeta;
    throw Error(ErrorKind::precondition, "outside_existence_region", os.str());
  }
  ps.coeffs.assign(M + 1, 0.0);
  ps.coeffs[1] = 2.0 * std::sqrt(ps.Gamma);
  const auto F = galerkin_residual(m, ps.k, ps.mu, ps.coeffs);
  for (double f : F) ps.residual = std::max(ps.residual, std::abs(f));
  return ps;
}

std::vector<double> galerkin_residual(const KernelModel& m, double k, double mu,
                                      const std::vector<double>& c) {
  const int M = static_cast<int>(c.size()) - 1;
  const int n = 4 * std::max(M, 4);
  detail::RealFFT fv(n), fw(n);
  auto* V = fv.spec();
  auto* W = fw.spec();
  for (int l = 0; l < fv.bins(); ++l) {
    const double vl = l > M ? 0.0 : (l == 0 ? c[0] : 0.5 * c[l]);
    V[l] = vl;
    W[l] = m.fourier(k * l, 0) * vl;
  }
  fv.inverse();
  fw.inverse();
  double* x = fv.real();
  const double* w = fw.real();
  for (int j = 0; j < n; ++j) x[j] *= w[j];
  fv.forward();

  std::vector<double> F(M + 1);
  for (int l = 0; l <= M; ++l) {
    const double prod = (l == 0 ? 1.0 : 2.0) * V[l].real() / n;
    F[l] = (-k * k * l * l - mu * m.fourier(k * l, 0)) * c[l] - mu * prod;
  }
  return F;
}

std::vector<double> galerkin_jacobian(const KernelModel& m, double k, double mu,
                                      const std::vector<double>& c) {
  const int M = static_cast<int>(c.size()) - 1;
  std::vector<double> phi(M + 1), d(M + 1);
  for (int j = 0; j <= M; ++j) {
    phi[j] = m.fourier(k * j, 0);
    d[j] = phi[j] * c[j];
  }
  // cos(i x) cos(j x) = (cos((i+j)x) + cos((i-j)x)) / 2; T is the
  // coefficient of cos(l x) in that product.
  auto T = [](int i, int j, int l) {
    double t = 0.0;
    if (i + j == l) t += 0.5;
    if (std::abs(i - j) == l) t += 0.5;
    return t;
  };
  std::vector<double> J((M + 1) * (M + 1), 0.0);
  for (int l = 0; l <= M; ++l) {
    for (int mm = 0; mm <= M; ++mm) {
      // d/dc_m of sum_{i,j} c_i d_j T(i, j, l)
      double s = 0.0;
      for (int j = 0; j <= M; ++j) {
        const double t = T(mm, j, l);
        if (t != 0.0) s += t * (d[j] + phi[mm] * c[j]);
      }
      J[l * (M + 1) + mm] = -mu * s;
    }
    J[l * (M + 1) + l] += -k * k * l * l - mu * phi[l];
  }
  return J;
}

double full_galerkin_residual(const KernelModel& m, double k, double mu,
                              const std::vector<std::complex<double>>& vhat) {
  const int M = (static_cast<int>(vhat.size()) - 1) / 2;
  std::vector<double> phi(2 * M + 1);
  for (int l = -M; l <= M; ++l) phi[l + M] = m.fourier(k * l, 0);
  double res = 0.0;
  for (int l = -M; l <= M; ++l) {
    std::complex<double> conv = 0.0;
    for (int j = std::max(-M, l - M); j <= std::min(M, l + M); ++j) {
      conv += vhat[l - j + M] * phi[j + M] * vhat[j + M];
    }
    const auto F = (-k * k * l * l - mu * phi[l + M]) * vhat[l + M] - mu * conv;
    res = std::max(res, std::abs(F));
  }
  return res;
}

std::vector<std::complex<double>> shifted_coefficients(const PeriodicSolution& ps, double tau) {
  const int M = ps.modes();
  std::vector<std::complex<double>> out(2 * M + 1);
  for (int l = -M; l <= M; ++l) {
    out[l + M] = ps.two_sided(l) * std::polar(1.0, l * tau);
  }
  return out;
}

PeriodicSolution newton_refine(const PeriodicSolution& init, const KernelModel& m,
                               const NewtonOptions& opts) {
  PeriodicSolution ps = init;
  const int M = ps.modes();
  if (M < 16) throw Error(ErrorKind::validation, "invalid_modes", "refinement needs M >= 16");
  using Eigen::Map;
  using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  ps.residual_history.clear();
  for (int it = 0;; ++it) {
    auto F = galerkin_residual(m, ps.k, ps.mu, ps.coeffs);
    double r = 0.0;
    for (double f : F) r = std::max(r, std::abs(f));
    ps.residual = r;
    ps.iterations = it;
    ps.residual_history.push_back(r);
    if (!std::isfinite(r)) {
      throw Error(ErrorKind::numerical, "newton_no_convergence", "Galerkin residual is not finite");
    }
    if (r < opts.tol) return ps;
    if (it >= opts.max_iter) {
      std::ostringstream os;
      os << "Newton did not reach " << opts.tol << " in " << opts.max_iter
         << " iterations (residual " << r << ")";
      throw Error(ErrorKind::numerical, "newton_no_convergence", os.str());
    }
    auto Jv = galerkin_jacobian(m, ps.k, ps.mu, ps.coeffs);
    Map<RowMat> J(Jv.data(), M + 1, M + 1);
    Eigen::FullPivLU<RowMat> lu(J);
    if (lu.rcond() < 1e-15) {
      throw Error(ErrorKind::numerical, "jacobian_singular",
                  "Galerkin Jacobian is singular (at or near the bifurcation point)");
    }
    Eigen::VectorXd dx = lu.solve(Map<Eigen::VectorXd>(F.data(), M + 1));
    for (int l = 0; l <= M; ++l) ps.coeffs[l] -= dx(l);
  }
}

PeriodicSolution with_modes(const PeriodicSolution& ps, int M) {
  PeriodicSolution out = ps;
  out.coeffs.assign(M + 1, 0.0);
  for (int l = 0; l <= std::min(M, ps.modes()); ++l) out.coeffs[l] = ps.coeffs[l];
  return out;
}

double evaluate(const PeriodicSolution& ps, double x) {
  double v = 0.0;
  for (int l = 0; l <= ps.modes(); ++l) v += ps.coeffs[l] * std::cos(l * ps.k * x);
  return 1.0 + v;
}

ProfileSamples sample_profile(const PeriodicSolution& ps, int n) {
  ProfileSamples s;
  const double period = 2.0 * std::numbers::pi / ps.k;
  for (int j = 0; j < n; ++j) {
    const double x = period * j / n;
    s.x.push_back(x);
    s.u.push_back(evaluate(ps, x));
  }
  return s;
}

}  // namespace nlkpp
