#include "criticalflow/helmholtz.hpp"

#include <stdexcept>

#include "criticalflow/kernels.hpp"

namespace criticalflow {

SpectralField project_P(const SpectralField& v) {
  const Grid& g = v.grid();
  const int d = g.dim();
  if (v.components() != d) throw std::invalid_argument("projection expects a vector field");
  SpectralField out = v;
  std::span<Complex> comps[3];
  std::span<const double> k[3];
  for (int a = 0; a < d; ++a) {
    comps[a] = out.component(a);
    k[a] = g.k_odd(a);
  }
  kernels::project_divergence_free(comps, d, k, g.k_odd2());
  return out;
}

SpectralField project_Q(const SpectralField& v) {
  SpectralField q = v;
  q -= project_P(v);
  return q;
}

}  // namespace criticalflow
