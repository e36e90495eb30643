#pragma once

#include <complex>
#include <vector>

#include <fftw3.h>

namespace nlkpp::detail {

/// Real-to-half-complex transform of fixed length n with owned buffers.
/// forward: X_l = sum_j x_j e^{-2 pi i l j / n}, l = 0..n/2.
/// inverse: x_j = sum_l X_l e^{2 pi i l j / n} over the Hermitian extension
/// (unnormalised, so inverse(forward(x)) = n x).
class RealFFT {
 public:
  explicit RealFFT(int n);
  ~RealFFT();
  RealFFT(const RealFFT&) = delete;
  RealFFT& operator=(const RealFFT&) = delete;

  int size() const { return n_; }
  int bins() const { return n_ / 2 + 1; }

  double* real() { return x_; }
  std::complex<double>* spec() { return reinterpret_cast<std::complex<double>*>(X_); }

  void forward() { fftw_execute(fwd_); }
  void inverse() { fftw_execute(inv_); }

 private:
  int n_;
  double* x_;
  fftw_complex* X_;
  fftw_plan fwd_;
  fftw_plan inv_;
};

}  // namespace nlkpp::detail
