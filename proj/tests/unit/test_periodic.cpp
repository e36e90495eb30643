#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "nlkpp/fit.hpp"
#include "nlkpp/periodic.hpp"

using namespace nlkpp;

namespace {

struct Setup {
  KernelModel m = KernelModel::exponential(0.7);
  CriticalPoint cp = critical_point(m);
  AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
};

// u_xx + mu u (1 - phi * u) at physical x, with the convolution done by
// quadrature of the real-space kernel (split at its kink).
double pde_residual(const PeriodicSolution& ps, const KernelModel& m, double x) {
  auto u = [&](double y) { return evaluate(ps, y); };
  auto f = [&](double y) { return m.value(y) * u(x - y); };
  const double conv = simpson(f, -60.0, 0.0, 120000) + simpson(f, 0.0, 60.0, 120000);
  double uxx = 0.0;
  for (int l = 1; l <= ps.modes(); ++l) {
    const double kl = l * ps.k;
    uxx -= kl * kl * ps.coeffs[l] * std::cos(kl * x);
  }
  return uxx + ps.mu * u(x) * (1.0 - conv);
}

}  // namespace

TEST_CASE("existence region is the band delta^2 < -phi eps^2 / zeta") {
  Setup s;
  const double eps = 0.05, b = std::sqrt(-s.cp.phi_kc * eps * eps / s.cp.zeta);
  CHECK(existence_region(s.cp, eps, 0.99 * b));
  CHECK_FALSE(existence_region(s.cp, eps, 1.01 * b));
  CHECK(error_code([&] { asymptotic_profile(s.cp, s.ac, s.m, eps, 1.01 * b); }) ==
        "outside_existence_region");
}

TEST_CASE("galerkin residual vanishes on the homogeneous state") {
  Setup s;
  std::vector<double> c(33, 0.0);
  for (double r : galerkin_residual(s.m, s.cp.k_c, 30.0, c)) CHECK(r == 0.0);
}

TEST_CASE("newton refinement converges and solves the PDE pointwise") {
  Setup s;
  for (double eps : {0.02, 0.05, 0.1}) {
    const auto init = asymptotic_profile(s.cp, s.ac, s.m, eps, 0.0, 64);
    const auto ps = newton_refine(init, s.m);
    CHECK(ps.residual < 1e-12);
    CHECK(ps.iterations <= 6);
    for (double x : {0.0, 0.7, 2.1}) CHECK(std::abs(pde_residual(ps, s.m, x)) < 1e-9);
  }
}

TEST_CASE("first harmonic approaches twice sqrt(Gamma)") {
  Setup s;
  std::vector<double> g, err;
  for (double eps : {0.02, 0.05, 0.1}) {
    const auto ps = newton_refine(asymptotic_profile(s.cp, s.ac, s.m, eps, 0.0, 64), s.m);
    g.push_back(ps.Gamma);
    err.push_back(std::abs(ps.coeffs[1] - 2.0 * std::sqrt(ps.Gamma)));
  }
  CHECK(loglog_order(g, err) >= 1.0);
}

TEST_CASE("detuned solutions carry the detuned wavenumber") {
  Setup s;
  const double eps = 0.05, d = 0.3 * std::sqrt(-s.cp.phi_kc * eps * eps / s.cp.zeta);
  const auto ps = newton_refine(asymptotic_profile(s.cp, s.ac, s.m, eps, d, 64), s.m);
  CHECK(std::abs(ps.k - (s.cp.k_c + d)) < 1e-15);
  CHECK(ps.residual < 1e-12);
  CHECK(std::abs(pde_residual(ps, s.m, 0.4)) < 1e-9);
}

TEST_CASE("translates remain solutions of the full system") {
  Setup s;
  const auto ps = newton_refine(asymptotic_profile(s.cp, s.ac, s.m, 0.05, 0.0, 64), s.m);
  for (double tau : {0.3, 1.7}) {
    CHECK(full_galerkin_residual(s.m, ps.k, ps.mu, shifted_coefficients(ps, tau)) < 1e-10);
  }
}

TEST_CASE("analytic jacobian matches finite differences") {
  Setup s;
  const auto ps = newton_refine(asymptotic_profile(s.cp, s.ac, s.m, 0.1, 0.0, 16), s.m);
  const int n = ps.modes() + 1;
  const auto J = galerkin_jacobian(s.m, ps.k, ps.mu, ps.coeffs);
  const double h = 1e-6;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    auto cp = ps.coeffs, cm = ps.coeffs;
    cp[j] += h;
    cm[j] -= h;
    const auto fp = galerkin_residual(s.m, ps.k, ps.mu, cp);
    const auto fm = galerkin_residual(s.m, ps.k, ps.mu, cm);
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs((fp[i] - fm[i]) / (2 * h) - J[i * n + j]));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("mode count changes keep the profile and validate") {
  Setup s;
  const auto ps = newton_refine(asymptotic_profile(s.cp, s.ac, s.m, 0.05, 0.0, 32), s.m);
  const auto big = with_modes(ps, 64);
  CHECK(big.modes() == 64);
  CHECK(std::abs(evaluate(big, 0.3) - evaluate(ps, 0.3)) < 1e-15);
  CHECK(error_code([&] { newton_refine(asymptotic_profile(s.cp, s.ac, s.m, 0.05, 0.0, 8), s.m); }) != "");
  const auto prof = sample_profile(ps, 512);
  CHECK(prof.x.size() == 512);
  CHECK(std::abs(prof.x.back() + prof.x[1] - 2 * std::numbers::pi / ps.k) < 1e-12);
}
