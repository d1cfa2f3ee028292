#pragma once

#include <Eigen/Core>
#include <complex>

#include "gricci/grid.hpp"

namespace gricci::detail {

class RealFft;

/// Allocation-free periodic differentiation for hot loops. One instance per
/// thread; the buffers are reused across calls.
class DerivativeKernel {
 public:
  explicit DerivativeKernel(const GridSpec& spec);

  int size() const { return n_; }
  void first(const double* in, double* d1);
  void first_second(const double* in, double* d1, double* d2);

 private:
  void forward(const double* in);

  int n_;
  Scheme scheme_;
  const RealFft* fft_ = nullptr;
  Eigen::ArrayXcd spectrum_;
  Eigen::ArrayXcd scratch_;
  Eigen::ArrayXd wave_;  // 2 pi m / n
  Eigen::ArrayXd in_;    // aligned copy of the input
};

}  // namespace gricci::detail
