#include "criticalflow/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace criticalflow {

std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw std::invalid_argument("trapezoid: length mismatch");
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (y[i] + y[i - 1]);
  return out;
}

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  const auto c = cumulative_trapezoid(t, y);
  return c.empty() ? 0.0 : c.back();
}

std::vector<double> cumulative_max(const std::vector<double>& y) {
  std::vector<double> out(y.size());
  double m = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = m = std::max(m, y[i]);
  return out;
}

}  // namespace criticalflow
