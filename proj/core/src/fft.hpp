#pragma once

#include <complex>

namespace gricci::detail {

/// Real-to-complex transform of a fixed length backed by cached FFTW plans.
/// Plans are created once per length under a global lock; execution is
/// reentrant and may be called concurrently.
class RealFft {
 public:
  static const RealFft& for_size(int n);

  int size() const { return n_; }
  int spectrum_size() const { return n_ / 2 + 1; }

  /// Unnormalized forward transform; out holds n/2 + 1 coefficients.
  void forward(const double* in, std::complex<double>* out) const;
  /// Unnormalized inverse transform. The input spectrum is left untouched.
  void inverse(const std::complex<double>* in, double* out) const;
  /// Unnormalized inverse transform that may overwrite the input spectrum.
  void inverse_in_place(std::complex<double>* in, double* out) const;

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  ~RealFft();

 private:
  explicit RealFft(int n);

  int n_;
  // SIMD plans for buffers with FFTW's preferred alignment, plus fallbacks.
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
  void* forward_unaligned_ = nullptr;
  void* inverse_unaligned_ = nullptr;
};

}  // namespace gricci::detail
