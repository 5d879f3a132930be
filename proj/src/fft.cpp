#include "criticalflow/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace criticalflow {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlans::FftPlans(int dim, int n) {
  std::vector<int> shape(static_cast<std::size_t>(dim), n);
  size_ = 1;
  for (int s : shape) size_ *= static_cast<std::size_t>(s);

  std::lock_guard lock(planner_mutex());
  auto* buffer = fftw_alloc_complex(size_);
  if (!buffer) throw std::bad_alloc();
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft(dim, shape.data(), buffer, buffer, FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft(dim, shape.data(), buffer, buffer, FFTW_BACKWARD, flags);
  fftw_free(buffer);
  if (!forward_ || !backward_) throw std::runtime_error("FFTW planning failed");
}

FftPlans::~FftPlans() {
  std::lock_guard lock(planner_mutex());
  if (forward_) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void FftPlans::forward(std::span<Complex> data) const {
  if (data.size() != size_) throw std::invalid_argument("FFT size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_), p, p);
}

void FftPlans::backward(std::span<Complex> data) const {
  if (data.size() != size_) throw std::invalid_argument("FFT size mismatch");
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(backward_), p, p);
}

}  // namespace criticalflow
