#include "derivative_kernel.hpp"

#include <algorithm>
#include <numbers>

#include "fft.hpp"

namespace gricci::detail {

namespace {

void fd4_first(const double* v, double* d1, int n) {
  const double c = n / 12.0;
  for (int j = 0; j < n; ++j) {
    const int m2 = (j + n - 2) % n, m1 = (j + n - 1) % n, p1 = (j + 1) % n, p2 = (j + 2) % n;
    d1[j] = c * (v[m2] - 8.0 * v[m1] + 8.0 * v[p1] - v[p2]);
  }
}

void fd4_second(const double* v, double* d2, int n) {
  const double c = static_cast<double>(n) * n / 12.0;
  for (int j = 0; j < n; ++j) {
    const int m2 = (j + n - 2) % n, m1 = (j + n - 1) % n, p1 = (j + 1) % n, p2 = (j + 2) % n;
    d2[j] = c * (-v[m2] + 16.0 * v[m1] - 30.0 * v[j] + 16.0 * v[p1] - v[p2]);
  }
}

}  // namespace

DerivativeKernel::DerivativeKernel(const GridSpec& spec) : n_(spec.n_nodes()), scheme_(spec.scheme()) {
  if (scheme_ == Scheme::spectral) {
    fft_ = &RealFft::for_size(n_);
    const Eigen::Index m = fft_->spectrum_size();
    spectrum_.resize(m);
    scratch_.resize(m);
    in_.resize(n_);
    wave_ = Eigen::ArrayXd::LinSpaced(m, 0.0, static_cast<double>(m - 1)) * (2.0 * std::numbers::pi / n_);
  }
}

void DerivativeKernel::forward(const double* in) {
  // Copy into an aligned buffer so the SIMD plan applies.
  std::copy(in, in + n_, in_.data());
  fft_->forward(in_.data(), spectrum_.data());
}

void DerivativeKernel::first(const double* in, double* d1) {
  if (scheme_ == Scheme::fd4) {
    fd4_first(in, d1, n_);
    return;
  }
  forward(in);
  scratch_ = std::complex<double>(0.0, 1.0) * (wave_ * spectrum_);
  scratch_[n_ / 2] = 0.0;
  fft_->inverse_in_place(scratch_.data(), d1);
}

void DerivativeKernel::first_second(const double* in, double* d1, double* d2) {
  if (scheme_ == Scheme::fd4) {
    fd4_first(in, d1, n_);
    fd4_second(in, d2, n_);
    return;
  }
  forward(in);
  scratch_ = std::complex<double>(0.0, 1.0) * (wave_ * spectrum_);
  scratch_[n_ / 2] = 0.0;
  fft_->inverse_in_place(scratch_.data(), d1);
  scratch_ = -(static_cast<double>(n_) * wave_.square()) * spectrum_;
  fft_->inverse_in_place(scratch_.data(), d2);
}

}  // namespace gricci::detail
