#include "nlkpp/dispersion.hpp"

#include <cmath>
#include <sstream>

#include "nlkpp/error.hpp"

namespace nlkpp {

double dispersion_eval(const KernelModel& m, double lambda, double k, double mu) {
  return -k * k - mu * m.fourier(k, 0) - lambda;
}

double dispersion_dk(const KernelModel& m, double k, double mu) {
  return -2.0 * k - mu * m.fourier(k, 1);
}

double dispersion_dkk(const KernelModel& m, double k, double mu) {
  return -2.0 - mu * m.fourier(k, 2);
}

std::vector<double> growth_rate_curve(const KernelModel& m, double mu,
                                      std::span<const double> k_grid) {
  std::vector<double> out;
  out.reserve(k_grid.size());
  for (double k : k_grid) out.push_back(-k * k - mu * m.fourier(k, 0));
  return out;
}

namespace {

double h_fn(const KernelModel& m, double k) { return 2.0 * m.fourier(k, 0) - k * m.fourier(k, 1); }

// h'(k) = phi_hat'(k) - k phi_hat''(k)
double h_prime(const KernelModel& m, double k) { return m.fourier(k, 1) - k * m.fourier(k, 2); }

}  // namespace

CriticalPoint critical_point(const KernelModel& m, const CriticalPointOptions& opts) {
  const int n = opts.scan_points;
  const double dk = opts.k_max / n;
  std::vector<double> brackets;
  double k_prev = dk * 1e-3;
  double h_prev = h_fn(m, k_prev);
  for (int i = 1; i <= n; ++i) {
    const double k = dk * i;
    const double h = h_fn(m, k);
    if (h == 0.0 || (h_prev < 0.0) != (h < 0.0)) brackets.push_back(k_prev);
    k_prev = k;
    h_prev = h;
  }
  if (brackets.empty()) {
    std::ostringstream os;
    os << "no sign change of 2 phi_hat - k phi_hat' on (0, " << opts.k_max
       << "]; the kernel has no Turing onset";
    throw Error(ErrorKind::precondition, "no_critical_root", os.str());
  }
  if (brackets.size() > 1) {
    std::ostringstream os;
    os << brackets.size() << " candidate critical wavenumbers found; uniqueness fails";
    throw Error(ErrorKind::precondition, "critical_not_unique", os.str());
  }

  double lo = brackets.front(), hi = lo + dk;
  double h_lo = h_fn(m, lo);
  while (hi - lo > opts.bisection_tol * std::max(1.0, lo)) {
    const double mid = 0.5 * (lo + hi);
    const double h_mid = h_fn(m, mid);
    if ((h_mid < 0.0) == (h_lo < 0.0)) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
    }
  }
  double k_c = 0.5 * (lo + hi);
  for (int it = 0; it < opts.newton_steps; ++it) {
    const double h = h_fn(m, k_c);
    const double hp = h_prime(m, k_c);
    if (h == 0.0 || hp == 0.0) break;
    const double step = h / hp;
    k_c -= step;
    if (std::abs(step) < 1e-16 * k_c) break;
  }

  CriticalPoint cp;
  cp.k_c = k_c;
  cp.phi_kc = m.fourier(k_c, 0);
  if (!(cp.phi_kc < 0.0)) {
    throw Error(ErrorKind::precondition, "h2_violation",
                "phi_hat(k_c) >= 0 at the candidate onset");
  }
  cp.mu_c = -k_c * k_c / cp.phi_kc;
  cp.phi_2kc = m.fourier(2.0 * k_c, 0);
  cp.phi_dd_kc = m.fourier(k_c, 2);
  cp.zeta = 1.0 + 0.5 * cp.mu_c * cp.phi_dd_kc;
  cp.d_residual = dispersion_eval(m, 0.0, k_c, cp.mu_c);
  cp.dk_residual = dispersion_dk(m, k_c, cp.mu_c);
  cp.h_residual = h_fn(m, k_c);
  if (!(cp.zeta > 0.0)) {
    throw Error(ErrorKind::precondition, "h2_violation",
                "d_kk(0, k_c, mu_c) >= 0 (zeta <= 0): onset is not a maximum");
  }
  if (!(cp.mu_c > 0.0)) {
    throw Error(ErrorKind::precondition, "h2_violation", "mu_c <= 0");
  }
  return cp;
}

}  // namespace nlkpp
