#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "helpers.hpp"
#include "nlkpp/twsystem.hpp"

using namespace nlkpp;

namespace {

struct Setup {
  KernelModel m = KernelModel::exponential(0.7);
  CriticalPoint cp = critical_point(m);
  double s = 2.0 * 1.3940371612116;
};

// Largest distance from each element of a to its nearest element of b.
double set_distance(const std::array<cplx, 6>& a, const Eigen::VectorXcd& b) {
  double worst = 0.0;
  for (const cplx& x : a) {
    double d = 1e300;
    for (int i = 0; i < b.size(); ++i) d = std::min(d, std::abs(x - b(i)));
    worst = std::max(worst, d);
  }
  return worst;
}

}  // namespace

TEST_CASE("characteristic polynomial matches determinants") {
  Setup t;
  for (int n : {0, 1, 2, 3}) {
    const Mat6 A = build_Mn(t.cp, t.m, n, 0.01, t.s);
    const auto c = char_poly(A);
    for (cplx l : {cplx(0.3, -1.0), cplx(-2.0, 0.5), cplx(1.0, 3.0)}) {
      const cplx det = (l * Mat6::Identity() - A).determinant();
      cplx p = 0.0;
      for (int i = 6; i >= 0; --i) p = p * l + c[i];
      CHECK(std::abs(p - det) < 1e-11 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST_CASE("factored polynomial at eps = 0") {
  Setup t;
  for (int n : {0, 1, 2}) {
    const Mat6 A = build_Mn(t.cp, t.m, n, 0.0, t.s);
    for (cplx l : {cplx(0.4, 0.2), cplx(-1.5, 2.0)}) {
      const cplx det = (l * Mat6::Identity() - A).determinant();
      CHECK(std::abs(char_poly_factored(t.cp, t.m, n, l) - det) < 1e-10 * std::abs(det));
    }
  }
}

TEST_CASE("polynomial roots of a known sextic") {
  // (x-1)(x-2)...(x-6)
  std::array<cplx, 7> c = {720.0, -1764.0, 1624.0, -735.0, 175.0, -21.0, 1.0};
  auto r = poly_roots(c);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  for (int i = 0; i < 6; ++i) CHECK(std::abs(r[i] - double(i + 1)) < 1e-10);
}

TEST_CASE("block spectra agree with a dense eigensolver") {
  Setup t;
  for (int n : {0, 1, 2}) {
    for (double eps : {0.0, 1e-3, 1e-2}) {
      const Mat6 A = build_Mn(t.cp, t.m, n, eps, t.s);
      Eigen::ComplexEigenSolver<Mat6> es(A);
      // double roots near eps = 0 are only resolved to sqrt(machine eps) by the dense solver
      CHECK(set_distance(spectrum_Mn(t.cp, t.m, n, eps, t.s), es.eigenvalues()) < 1e-6);
    }
    const auto closed = spectrum_closed(t.cp, t.m, n);
    const auto sp = spectrum_Mn(t.cp, t.m, n, 0.0, t.s);
    for (int i = 0; i < 6; ++i) CHECK(sp[i] == closed[i]);
  }
}

TEST_CASE("Jordan chain and its adjoint") {
  Setup t;
  const auto jd = jordan_chain(t.cp, t.m, t.s);
  const Mat6 M = build_Mn(t.cp, t.m, 1, 0.0, t.s);
  CHECK((M * jd.e0).norm() < 1e-12);
  CHECK((M * jd.e1 - jd.e0).norm() < 1e-12);
  CHECK((M.adjoint() * jd.e0s).norm() < 1e-12);
  CHECK(std::abs(inner(jd.e0, jd.e1s) - 1.0) < 1e-12);
  CHECK(std::abs(inner(jd.e1, jd.e1s)) < 1e-12);
  CHECK(std::abs(inner(jd.e0, jd.e0s)) < 1e-12);
  CHECK(jd.biorth_residual < 1e-12);
  CHECK(std::abs(jd.e1s_defect) > 1e-3);  // the uncorrected closed form is off
}

TEST_CASE("central eigenvalues: O(eps^2) deviation, sqrt(eps) splitting elsewhere") {
  Setup t;
  const auto f = eigen_splitting(t.cp, t.m, t.s, {1e-2, 3e-3, 1e-3});
  CHECK(f.order_plus >= 1.9);
  CHECK(f.order_minus >= 1.9);
  CHECK(f.order_split0 >= 0.4);
  CHECK(f.order_split0 <= 0.6);
  CHECK(f.order_split2 >= 0.4);
  CHECK(f.order_split2 <= 0.6);
  // leading splitting coefficient
  const cplx z = sqrt_split_coefficient(t.cp, t.m, t.s, 1);
  CHECK(std::abs(f.split0.back() / std::sqrt(1e-3) - std::abs(z)) < 0.05 * std::abs(z));
}

TEST_CASE("spectral gap separates four central eigenvalues") {
  Setup t;
  for (double eps : {1e-2, 1e-3}) {
    const auto g = spectral_gap_check(t.cp, t.m, eps, t.s, 6);
    CHECK(g.central_count == 4);
    CHECK(g.d0 * eps < g.d1 * std::sqrt(eps));
  }
  CHECK(error_code([&] { spectral_gap_check(t.cp, t.m, 1e-2, 1.0, 4); }) == "delta_nonpositive");
}

TEST_CASE("adjoint pairing grows linearly with slope sqrt(Delta)/alpha2") {
  Setup t;
  const auto f = inner_product_asymptotics(t.cp, t.m, t.s, {1e-2, 5e-3, 2e-3});
  CHECK(std::abs(f.slope_plus - f.predicted) < 0.05 * f.predicted);
  CHECK(std::abs(f.slope_minus + f.predicted) < 0.05 * f.predicted);
  CHECK(f.cross_scaled < 1e-3);
}

TEST_CASE("quadratic centre-manifold coefficients") {
  Setup t;
  const auto t0 = theta_quadratic(t.cp, t.m, 1e-3, t.s, {1, 0, 1, 0}, 0);
  CHECK(std::abs(t0.N0 - 2.0 * t.cp.phi_kc) < 1e-12);
  CHECK(t0.diff < 1e-3);
  const auto t2 = theta_quadratic(t.cp, t.m, 1e-3, t.s, {2, 0, 0, 0}, 2);
  CHECK(t2.diff < 1e-3);
  const auto t1 = theta_quadratic(t.cp, t.m, 1e-3, t.s, {1, 1, 0, 0}, 1);
  CHECK(t1.diff < 1e-2);
  CHECK(error_code([&] { theta_quadratic(t.cp, t.m, 1e-3, t.s, {1, 0, 0, 0}, 0); }) ==
        "invalid_multi_index");
}
