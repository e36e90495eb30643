#pragma once

#include <functional>
#include <optional>
#include <string>

namespace nlkpp {

/// Convolution kernel phi with its Fourier transform
///
///   phi_hat(k) = \int phi(x) e^{-ikx} dx,
///
/// so that phi_hat(0) = 1 for a normalised kernel. The exponential family
///
///   phi(x) = (3a/2) e^{-a|x|} - e^{-|x|},   a in (2/3, 1),
///
/// has phi_hat(k) = 3a^2/(a^2+k^2) - 2/(1+k^2); the two rational pieces are
/// exposed separately because the traveling-wave and elliptic machinery
/// works with them individually.
///
/// A kernel may also be built from user-supplied Fourier data. Such kernels
/// serve the dispersion, coefficient, periodic and stability computations
/// only; anything requiring the elliptic reformulation checks
/// is_exponential().
///
/// KernelModel is an immutable value and safe to share across threads.
class KernelModel {
 public:
  using FourierFn = std::function<double(double)>;

  /// Exponential family; throws Error{validation, "kernel_domain"} unless
  /// a is finite and strictly inside (2/3, 1).
  static KernelModel exponential(double a);

  /// Kernel given by its Fourier transform and the first two derivatives.
  static KernelModel from_fourier(FourierFn phi_hat, FourierFn d1, FourierFn d2,
                                  std::string name = "tabulated");

  bool is_exponential() const noexcept { return a_.has_value(); }

  /// Shape parameter a; throws for non-exponential kernels.
  double a() const;
  /// Amplitude A = 3a/2.
  double amplitude() const;
  const std::string& name() const noexcept { return name_; }

  /// Real-space value phi(x); exponential family only.
  double value(double x) const;

  /// phi_hat(k) and its analytic derivatives, order in {0, 1, 2}.
  double fourier(double k, int order = 0) const;

  /// Rational components phi_hat_v(k) = 3a^2/(a^2+k^2) and
  /// phi_hat_w(k) = -2/(1+k^2); exponential family only.
  double fourier_v(double k) const;
  double fourier_w(double k) const;

 private:
  KernelModel() = default;

  std::optional<double> a_;
  FourierFn f0_, f1_, f2_;
  std::string name_;
};

}  // namespace nlkpp
