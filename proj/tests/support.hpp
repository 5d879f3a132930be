#pragma once

#include <random>

#include "criticalflow/field.hpp"
#include "criticalflow/spectral.hpp"

namespace testing_support {

using namespace criticalflow;

// Real field with independent standard normal samples.
inline SpectralField random_field(const Grid& g, int comps, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  PhysicalField f(g, comps);
  for (double& x : f.values()) x = nd(rng);
  return to_spectral(f);
}

// Physical field from a callable of (x, y, z) per component.
template <class F>
SpectralField sample(const Grid& g, int comps, F&& f) {
  PhysicalField p(g, comps);
  const std::size_t m = g.modes();
  for (int c = 0; c < comps; ++c) {
    auto out = p.component(c);
    for (std::size_t i = 0; i < m; ++i) {
      const double x = g.coordinate(i, 0), y = g.coordinate(i, 1);
      const double z = g.dim() == 3 ? g.coordinate(i, 2) : 0.0;
      out[i] = f(c, x, y, z);
    }
  }
  return to_spectral(p);
}

}  // namespace testing_support
