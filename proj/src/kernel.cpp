#include "nlkpp/kernel.hpp"

#include <cmath>
#include <sstream>

#include "nlkpp/error.hpp"

namespace nlkpp {

KernelModel KernelModel::exponential(double a) {
  if (!std::isfinite(a) || !(a > 2.0 / 3.0) || !(a < 1.0)) {
    std::ostringstream os;
    os << "kernel shape parameter a = " << a
       << " outside (2/3, 1); phi would fail positivity or normalisation";
    throw Error(ErrorKind::validation, "kernel_domain", os.str());
  }
  KernelModel m;
  m.a_ = a;
  m.name_ = "exponential";
  const double a2 = a * a;
  m.f0_ = [a2](double k) {
    const double k2 = k * k;
    return 3.0 * a2 / (a2 + k2) - 2.0 / (1.0 + k2);
  };
  m.f1_ = [a2](double k) {
    const double k2 = k * k;
    const double pa = a2 + k2, pb = 1.0 + k2;
    return -6.0 * a2 * k / (pa * pa) + 4.0 * k / (pb * pb);
  };
  m.f2_ = [a2](double k) {
    const double k2 = k * k;
    const double pa = a2 + k2, pb = 1.0 + k2;
    return 3.0 * a2 * (6.0 * k2 - 2.0 * a2) / (pa * pa * pa) -
           2.0 * (6.0 * k2 - 2.0) / (pb * pb * pb);
  };
  return m;
}

KernelModel KernelModel::from_fourier(FourierFn phi_hat, FourierFn d1, FourierFn d2,
                                      std::string name) {
  if (!phi_hat || !d1 || !d2) {
    throw Error(ErrorKind::validation, "kernel_incomplete",
                "Fourier kernel requires phi_hat and both derivatives");
  }
  KernelModel m;
  m.f0_ = std::move(phi_hat);
  m.f1_ = std::move(d1);
  m.f2_ = std::move(d2);
  m.name_ = std::move(name);
  return m;
}

double KernelModel::a() const {
  if (!a_) {
    throw Error(ErrorKind::precondition, "kernel_not_exponential",
                "operation requires the exponential kernel family");
  }
  return *a_;
}

double KernelModel::amplitude() const { return 1.5 * a(); }

double KernelModel::value(double x) const {
  const double sa = a();
  const double ax = std::abs(x);
  return 1.5 * sa * std::exp(-sa * ax) - std::exp(-ax);
}

double KernelModel::fourier(double k, int order) const {
  switch (order) {
    case 0: return f0_(k);
    case 1: return f1_(k);
    case 2: return f2_(k);
    default:
      throw Error(ErrorKind::validation, "fourier_order",
                  "Fourier derivative order must be 0, 1 or 2");
  }
}

double KernelModel::fourier_v(double k) const {
  const double a2 = a() * a();
  return 3.0 * a2 / (a2 + k * k);
}

double KernelModel::fourier_w(double k) const {
  a();
  return -2.0 / (1.0 + k * k);
}

}  // namespace nlkpp
