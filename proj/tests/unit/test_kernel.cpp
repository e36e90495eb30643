#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "helpers.hpp"
#include "nlkpp/kernel.hpp"

using namespace nlkpp;

TEST_CASE("fourier transform is normalised") {
  for (double a : {0.68, 0.7, 0.8, 0.95}) {
    CHECK(std::abs(KernelModel::exponential(a).fourier(0.0) - 1.0) < 1e-15);
  }
}

TEST_CASE("fourier transform matches quadrature of the real-space kernel") {
  const auto m = KernelModel::exponential(0.7);
  for (double k : {0.0, 0.5, 1.262811975365474, 3.0}) {
    // phi is even: phi_hat(k) = 2 int_0^inf phi(x) cos(kx) dx; tail beyond 60 is below e^-42.
    const double q = 2.0 * simpson([&](double x) { return m.value(x) * std::cos(k * x); }, 0.0,
                                   60.0, 200000);
    CHECK(std::abs(q - m.fourier(k)) < 1e-10);
  }
}

TEST_CASE("derivatives agree with central differences") {
  const auto m = KernelModel::exponential(0.75);
  const double h = 1e-5;
  for (double k : {0.3, 1.1, 2.5}) {
    const double d1 = (m.fourier(k + h) - m.fourier(k - h)) / (2 * h);
    const double d2 = (m.fourier(k + h) - 2 * m.fourier(k) + m.fourier(k - h)) / (h * h);
    CHECK(std::abs(d1 - m.fourier(k, 1)) < 1e-9);
    CHECK(std::abs(d2 - m.fourier(k, 2)) < 1e-5);
  }
}

TEST_CASE("rational pieces sum to the transform") {
  const auto m = KernelModel::exponential(0.7);
  for (double k : {0.0, 0.9, 4.0}) {
    CHECK(std::abs(m.fourier_v(k) + m.fourier_w(k) - m.fourier(k)) < 1e-15);
    CHECK(std::abs(m.fourier_v(k) - 3 * 0.49 / (0.49 + k * k)) < 1e-15);
  }
}

TEST_CASE("real-space kernel integrates to one") {
  const auto m = KernelModel::exponential(0.8);
  CHECK(std::abs(2.0 * simpson([&](double x) { return m.value(x); }, 0.0, 60.0, 100000) - 1.0) <
        1e-10);
  CHECK(std::abs(m.amplitude() - 1.2) < 1e-15);
}

TEST_CASE("shape parameter outside (2/3, 1) is rejected") {
  for (double a : {0.5, 2.0 / 3.0, 1.0, 1.5, std::numeric_limits<double>::quiet_NaN()}) {
    CHECK(error_code([&] { KernelModel::exponential(a); }) == "kernel_domain");
    CHECK(error_kind([&] { KernelModel::exponential(a); }) == ErrorKind::validation);
  }
}

TEST_CASE("tabulated kernel has no shape parameter") {
  const auto m = KernelModel::from_fourier([](double k) { return 1.0 / (1.0 + k * k); },
                                           [](double k) { return -2 * k / std::pow(1 + k * k, 2); },
                                           [](double k) { return (6 * k * k - 2) / std::pow(1 + k * k, 3); });
  CHECK_FALSE(m.is_exponential());
  CHECK(std::abs(m.fourier(1.0) - 0.5) < 1e-15);
  CHECK(error_code([&] { (void)m.a(); }) == "kernel_not_exponential");
}
