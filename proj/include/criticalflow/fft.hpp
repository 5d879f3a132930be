#pragma once

#include <complex>
#include <span>

namespace criticalflow {

using Complex = std::complex<double>;

/// In-place complex FFTs of one grid-shaped array.
///
/// Plans are created once per grid under a global planner lock; executing
/// them is thread safe. Neither direction normalizes.
class FftPlans {
 public:
  FftPlans(int dim, int n);
  ~FftPlans();
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void forward(std::span<Complex> data) const;
  void backward(std::span<Complex> data) const;

 private:
  void* forward_ = nullptr;
  void* backward_ = nullptr;
  std::size_t size_ = 0;
};

}  // namespace criticalflow
