#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace gricci::detail {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(int n) : n_(n) {
  // Caller holds the planner lock.
  double* real = fftw_alloc_real(n);
  fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
  forward_plan_ = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_MEASURE);
  inverse_plan_ = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_MEASURE);
  forward_unaligned_ = fftw_plan_dft_r2c_1d(n, real, spec, FFTW_MEASURE | FFTW_UNALIGNED);
  inverse_unaligned_ = fftw_plan_dft_c2r_1d(n, spec, real, FFTW_MEASURE | FFTW_UNALIGNED);
  fftw_free(spec);
  fftw_free(real);
}

RealFft::~RealFft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(forward_unaligned_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_unaligned_));
}

const RealFft& RealFft::for_size(int n) {
  // The mutex must outlive the cache: plan destruction locks it at exit.
  std::mutex& mutex = planner_mutex();
  static std::map<int, std::unique_ptr<RealFft>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::unique_ptr<RealFft>(new RealFft(n))).first;
  }
  return *it->second;
}

namespace {

bool aligned(const void* a, const void* b) {
  return fftw_alignment_of(static_cast<double*>(const_cast<void*>(a))) == 0 &&
         fftw_alignment_of(static_cast<double*>(const_cast<void*>(b))) == 0;
}

}  // namespace

void RealFft::forward(const double* in, std::complex<double>* out) const {
  const auto plan = static_cast<fftw_plan>(aligned(in, out) ? forward_plan_ : forward_unaligned_);
  fftw_execute_dft_r2c(plan, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void RealFft::inverse(const std::complex<double>* in, double* out) const {
  // c2r transforms overwrite their input.
  thread_local std::vector<std::complex<double>> scratch;
  scratch.assign(in, in + spectrum_size());
  inverse_in_place(scratch.data(), out);
}

void RealFft::inverse_in_place(std::complex<double>* in, double* out) const {
  const auto plan = static_cast<fftw_plan>(aligned(in, out) ? inverse_plan_ : inverse_unaligned_);
  fftw_execute_dft_c2r(plan, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace gricci::detail
