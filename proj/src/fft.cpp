#include "fft.hpp"

namespace nlkpp::detail {

RealFFT::RealFFT(int n) : n_(n) {
  x_ = fftw_alloc_real(n);
  X_ = fftw_alloc_complex(n / 2 + 1);
  fwd_ = fftw_plan_dft_r2c_1d(n, x_, X_, FFTW_ESTIMATE);
  // c2r destroys its input by default; keep the spectrum intact.
  inv_ = fftw_plan_dft_c2r_1d(n, X_, x_, FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
}

RealFFT::~RealFFT() {
  fftw_destroy_plan(fwd_);
  fftw_destroy_plan(inv_);
  fftw_free(x_);
  fftw_free(X_);
}

}  // namespace nlkpp::detail
