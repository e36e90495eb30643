#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "helpers.hpp"
#include "nlkpp/fit.hpp"
#include "nlkpp/simulate.hpp"

using namespace nlkpp;

namespace {

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK(error_code([] { Grid::make(100.0, 200); }) == "invalid_grid");
  CHECK(error_code([] { Grid::make(100.0, 128); }) == "invalid_grid");
  CHECK(error_code([] { Grid::make(-1.0, 256); }) == "invalid_grid");
  const Grid g = Grid::make(100.0, 256);
  CHECK(std::abs(g.k(3) - 6 * std::numbers::pi / 100.0) < 1e-15);
}

TEST_CASE("nonlocal operator on constants and Fourier modes") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(80.0, 256);
  for (Backend b : {Backend::fourier, Backend::elliptic}) {
    const auto c = nonlocal_apply(g, std::vector<double>(g.N, 2.5), m, b);
    CHECK(sup_diff(c, std::vector<double>(g.N, 2.5)) < 1e-13);
    std::vector<double> u(g.N);
    for (int j = 0; j < g.N; ++j) u[j] = std::cos(g.k(7) * g.x(j));
    const auto r = nonlocal_apply(g, u, m, b);
    for (auto& v : u) v *= m.fourier(g.k(7));
    CHECK(sup_diff(r, u) < 1e-13);
  }
}

TEST_CASE("nonlocal operator agrees with the periodised real-space kernel") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(40.0, 256);
  std::vector<double> u(g.N);
  for (int j = 0; j < g.N; ++j) u[j] = std::exp(std::sin(2 * std::numbers::pi * g.x(j) / g.L));
  const auto r = nonlocal_apply(g, u, m, Backend::fourier);
  // direct quadrature of int phi(y) u(x - y) dy with u extended periodically
  auto uper = [&](double x) { return std::exp(std::sin(2 * std::numbers::pi * x / g.L)); };
  for (int j : {0, 50, 200}) {
    auto f = [&](double y) { return m.value(y) * uper(g.x(j) - y); };
    const double q = simpson(f, -60, 0, 60000) + simpson(f, 0, 60, 60000);
    CHECK(std::abs(q - r[j]) < 1e-9);
  }
}

TEST_CASE("backends agree on random data") {
  const auto m = KernelModel::exponential(0.75);
  const Grid g = Grid::make(200.0, 1024);
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  std::vector<double> u(g.N);
  for (auto& v : u) v = nd(rng);
  CHECK(sup_diff(nonlocal_apply(g, u, m, Backend::fourier),
                 nonlocal_apply(g, u, m, Backend::elliptic)) < 1e-12);
}

TEST_CASE("constant data follows the logistic equation") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(50.0, 256);
  const double mu = 1.5;
  EvolveOptions o;
  o.T = 5.0;
  o.dt = 1e-3;
  o.stride = 1000;
  const auto s = evolve(g, std::vector<double>(g.N, 0.5), m, mu, o);
  const double exact = 1.0 / (1.0 + std::exp(-mu * 5.0));
  CHECK(std::abs(s.times.back() - 5.0) < 1e-12);
  CHECK(sup_diff(s.frames.back(), std::vector<double>(g.N, exact)) < 1e-8);
}

TEST_CASE("small perturbations grow at the dispersion rate") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(100.0, 256);
  const double mu = 30.0;
  for (int jp : {18, 20, 22}) {
    const double kp = g.k(jp);
    std::vector<double> u0(g.N);
    for (int j = 0; j < g.N; ++j) u0[j] = 1.0 + 1e-6 * std::cos(kp * g.x(j));
    EvolveOptions o;
    o.T = 4.0;
    o.dt = 0.01;
    o.stride = 20;
    const auto s = evolve(g, u0, m, mu, o);
    std::vector<double> logamp;
    for (const auto& f : s.frames) {
      double a = 0.0;
      for (int j = 0; j < g.N; ++j) a += (f[j] - 1.0) * std::cos(kp * g.x(j));
      logamp.push_back(std::log(std::abs(2.0 * a / g.N)));
    }
    const double rate = linear_fit(s.times, logamp).slope;
    const double expect = -kp * kp - mu * m.fourier(kp);
    CHECK(std::abs(rate - expect) < 1e-3 * std::abs(expect));
  }
}

TEST_CASE("fourier and elliptic time stepping agree") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(200.0, 1024);
  const auto u0 = initial_condition(g, "front", m, 32.0);
  EvolveOptions o;
  o.T = 0.5;
  o.dt = 0.05;
  o.stride = 10;
  const auto a = evolve(g, u0, m, 32.0, o);
  o.backend = Backend::elliptic;
  const auto b = evolve(g, u0, m, 32.0, o);
  CHECK(sup_diff(a.frames.back(), b.frames.back()) < 1e-10);
}

TEST_CASE("time stepping is fourth order") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(100.0, 256);
  const auto u0 = initial_condition(g, "cosine:1.26:0.2", m, 30.0);
  auto run = [&](double dt) {
    EvolveOptions o;
    o.T = 2.0;
    o.dt = dt;
    return evolve(g, u0, m, 30.0, o).frames.back();
  };
  const auto ref = run(0.01);
  const double e1 = sup_diff(run(0.04), ref), e2 = sup_diff(run(0.02), ref);
  CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("step size above the explicit stability envelope is rejected") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(100.0, 256);
  EvolveOptions o;
  o.dt = 0.2;
  CHECK(error_code([&] { evolve(g, std::vector<double>(g.N, 1.0), m, 32.0, o); }) == "dt_unstable");
  std::vector<double> bad(g.N, 1.0);
  bad[3] = std::nan("");
  o.dt = 0.01;
  CHECK(error_code([&] { evolve(g, bad, m, 32.0, o); }) == "invalid_field");
}

TEST_CASE("initial conditions") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(100.0, 256);
  const auto c = initial_condition(g, "cosine:1.3:0.1", m, 30.0);
  CHECK(std::abs(c[0] - 1.1) < 1e-15);
  CHECK(std::abs(c[g.N / 2] - (1.0 + 0.1 * std::cos(g.k(21) * g.x(g.N / 2)))) < 1e-14);
  CHECK(error_code([&] { initial_condition(g, "sawtooth", m, 30.0); }) == "invalid_ic");
  CHECK(error_code([&] { initial_condition(g, "const:abc", m, 30.0); }) == "invalid_ic");
  CHECK(error_code([&] { initial_condition(g, "modfront:0.1:3", m, 30.0); }) == "invalid_ic");
}

TEST_CASE("frame storage, dump and front diagnostics") {
  const auto m = KernelModel::exponential(0.7);
  const Grid g = Grid::make(400.0, 1024);
  EvolveOptions o;
  o.T = 40.0;
  o.dt = 0.05;
  o.ic = "front";
  const auto s = evolve(g, initial_condition(g, "front", m, 32.0), m, 32.0, o);
  CHECK(s.frames.size() <= 500);
  CHECK(s.frames.size() == s.times.size());

  const auto d = measure_front(s);
  CHECK(d.position_monotone);
  CHECK(d.speed > 0.0);
  CHECK(d.wake_amplitude > 0.1);

  const auto dir = std::filesystem::temp_directory_path() / "nlkpp_dump_test";
  std::filesystem::create_directories(dir);
  const std::string side = write_field_dump(s, (dir / "f").string());
  std::ifstream is((dir / "f.bin").string(), std::ios::binary);
  std::vector<double> back(s.frames.size() * g.N);
  is.read(reinterpret_cast<char*>(back.data()), back.size() * 8);
  CHECK(is.gcount() == static_cast<std::streamsize>(back.size() * 8));
  CHECK(back[(s.frames.size() - 1) * g.N + 17] == s.frames.back()[17]);
  CHECK(std::filesystem::exists(side));
  std::filesystem::remove_all(dir);

  FieldSeries flat = s;
  for (auto& f : flat.frames) std::fill(f.begin(), f.end(), 1.0);
  CHECK(error_code([&] { measure_front(flat); }) == "no_front");
}
