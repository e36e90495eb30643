#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nlkpp/fit.hpp"
#include "nlkpp/front.hpp"

using namespace nlkpp;

namespace {

struct Setup {
  KernelModel m = KernelModel::exponential(0.7);
  CriticalPoint cp = critical_point(m);
  AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
  double smin = tw_coeffs(cp, m, 1.0).s_min;
};

}  // namespace

TEST_CASE("reduced ODE forms share coefficients") {
  Setup t;
  const auto gl = ReducedODE::make(t.cp, t.m, 3.0, ODEForm::gl);
  const auto al = ReducedODE::make(t.cp, t.m, 3.0, ODEForm::alpha);
  CHECK(std::abs(gl.lin() - al.lin()) < 1e-12);
  CHECK(std::abs(gl.damp() - al.damp()) < 1e-12);
  CHECK(std::abs(gl.cub() - al.cub()) < 1e-12);
  CHECK(std::abs(gl.q_star() - std::sqrt(t.cp.phi_kc / t.ac.omega)) < 1e-14);
  CHECK(std::abs(gl.s_min() - t.smin) < 1e-12);
}

TEST_CASE("fixed points and their linearisations") {
  Setup t;
  const auto fps = fixed_points(ReducedODE::make(t.cp, t.m, 2 * t.smin));
  CHECK(fps.size() == 3);
  for (const auto& f : fps) CHECK(f.max_diff < 1e-8);
  const auto tw = tw_coeffs(t.cp, t.m, 2 * t.smin);
  // origin: planar eigenvalues are chi+- (stable node when s > s_min)
  bool seen = false;
  for (const auto& f : fps) {
    if (f.q != 0.0) continue;
    seen = true;
    for (double e : f.eig_planar) {
      CHECK(std::min(std::abs(e - tw.chi_plus), std::abs(e - tw.chi_minus)) < 1e-12);
    }
  }
  CHECK(seen);
}

TEST_CASE("heteroclinic fronts across speeds") {
  Setup t;
  for (double f : {1.1, 2.0, 4.0}) {
    const auto ode = ReducedODE::make(t.cp, t.m, f * t.smin);
    const auto p = shoot_heteroclinic(ode);
    CHECK(p.shoot_residual < 1e-8);
    CHECK(p.monotone);
    CHECK(std::abs(p.q.front() - p.q_star) < 1e-6 * p.q_star);
    CHECK(std::abs(p.q.back()) < 1e-8);
    CHECK(p.max_dVdZ <= 1e-14);
    CHECK(p.dV_residual < 1e-8);
    // profile consistency: q' = p and p' = f(q, p) by central differences
    double e1 = 0.0, e2 = 0.0;
    for (size_t i = 1; i + 1 < p.q.size(); ++i) {
      e1 = std::max(e1, std::abs((p.q[i + 1] - p.q[i - 1]) / (2 * p.h) - p.p[i]));
      e2 = std::max(e2, std::abs((p.p[i + 1] - p.p[i - 1]) / (2 * p.h) - ode.dp(p.q[i], p.p[i])));
    }
    CHECK(e1 < 1e-5);
    CHECK(e2 < 1e-5);
  }
}

TEST_CASE("alpha and gl forms give the same front") {
  Setup t;
  const double s = 2 * t.smin;
  const auto a = shoot_heteroclinic(ReducedODE::make(t.cp, t.m, s, ODEForm::alpha));
  const auto g = shoot_heteroclinic(ReducedODE::make(t.cp, t.m, s, ODEForm::gl));
  REQUIRE(a.q.size() == g.q.size());
  double d = 0.0;
  for (size_t i = 0; i < a.q.size(); ++i) d = std::max(d, std::abs(a.q[i] - g.q[i]));
  CHECK(d < 1e-10);
}

TEST_CASE("RK4 profile converges at fourth order") {
  Setup t;
  const auto ode = ReducedODE::make(t.cp, t.m, 2 * t.smin);
  ShootOptions o;
  o.h = 0.0125;
  const auto ref = shoot_heteroclinic(ode, o);
  // compare in the middle of the transition, where q = q*/2
  size_t i = 0;
  while (ref.q[i] > 0.5 * ref.q_star) ++i;
  const double Zm = 0.2 * std::round(ref.Z[i] / 0.2);  // on every grid below
  std::vector<double> hs = {0.2, 0.1, 0.05}, err;
  for (double h : hs) {
    o.h = h;
    const auto f = shoot_heteroclinic(ode, o);
    err.push_back(std::abs(f.q[std::lround(Zm / h)] - ref.q[std::lround(Zm / 0.0125)]));
  }
  CHECK(loglog_order(hs, err) > 3.5);
}

TEST_CASE("speed below the minimal speed is rejected") {
  Setup t;
  const auto ode = ReducedODE::make(t.cp, t.m, 0.1);
  CHECK(error_code([&] { shoot_heteroclinic(ode); }) == "speed_below_min");
  CHECK(error_kind([&] { shoot_heteroclinic(ode); }) == ErrorKind::precondition);
}

TEST_CASE("modulated front connects the periodic wake to u = 1") {
  Setup t;
  const double eps = 0.1, s = 2 * t.smin;
  const auto fp = shoot_heteroclinic(ReducedODE::make(t.cp, t.m, s));
  const auto mf = assemble_modulated_front(fp, t.cp, t.ac, eps, 0.0, 0.0);
  const double wake = 2 * eps * std::sqrt(t.cp.phi_kc / t.ac.omega);
  CHECK(std::abs(mf.wake_amplitude() - wake) < 1e-14);
  CHECK(std::abs(mf.speed() - eps * s) < 1e-15);
  CHECK(std::abs(2 * eps * mf.envelope(0.0) - 0.5 * wake) < 1e-6 * wake);
  CHECK(std::abs(mf(0.0, -1e4) - 1.0 - wake * std::cos(t.cp.k_c * -1e4)) < 1e-9);
  CHECK(std::abs(mf(0.0, 1e4) - 1.0) < 1e-9);
  // the envelope travels at eps s under a fixed carrier
  const double x = 40.0, dt = 50.0, x2 = x + eps * s * dt;
  CHECK(std::abs((mf(dt, x2) - 1.0) / std::cos(t.cp.k_c * x2) -
                 (mf(0.0, x) - 1.0) / std::cos(t.cp.k_c * x)) < 1e-12);
  const double bound = std::sqrt(-t.cp.phi_kc / t.ac.zeta) * eps;
  CHECK(error_code([&] { assemble_modulated_front(fp, t.cp, t.ac, eps, 1.1 * bound); }) ==
        "outside_existence_region");
}
