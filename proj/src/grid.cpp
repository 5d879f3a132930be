#include "criticalflow/grid.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "criticalflow/fft.hpp"

namespace criticalflow {

GridTables::GridTables() = default;
GridTables::~GridTables() = default;

double Grid::volume() const { return std::pow(tables_->length, tables_->dim); }

std::size_t Grid::mode_index(std::span<const int> xi) const {
  const int n = tables_->n;
  std::size_t idx = 0;
  for (int a = 0; a < tables_->dim; ++a) {
    int i = xi[a] % n;
    if (i < 0) i += n;
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
  }
  return idx;
}

double Grid::coordinate(std::size_t index, int axis) const {
  const auto n = static_cast<std::size_t>(tables_->n);
  for (int a = tables_->dim - 1; a > axis; --a) index /= n;
  return static_cast<double>(index % n) * spacing();
}

bool operator==(const Grid& a, const Grid& b) {
  if (a.tables_ == b.tables_) return true;
  if (!a.tables_ || !b.tables_) return false;
  return a.dim() == b.dim() && a.n() == b.n() && a.length() == b.length();
}

Grid make_grid(int dim, int n, double length) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("grid size must be a power of two >= 8, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid length must be positive");

  auto t = std::make_shared<GridTables>();
  t->dim = dim;
  t->n = n;
  t->length = length;
  t->modes = 1;
  for (int a = 0; a < dim; ++a) t->modes *= static_cast<std::size_t>(n);

  const double unit = 2.0 * std::numbers::pi / length;
  for (int a = 0; a < dim; ++a) {
    t->xi[a].resize(t->modes);
    t->k[a].resize(t->modes);
    t->k_odd[a].resize(t->modes);
  }
  t->k2.resize(t->modes);
  t->k_mag.resize(t->modes);
  t->k_odd2.resize(t->modes);
  t->retained.resize(t->modes);
  t->shell.assign(t->modes, -1);

  std::map<std::int64_t, std::int32_t> shells;
  const auto un = static_cast<std::size_t>(n);
  for (std::size_t m = 0; m < t->modes; ++m) {
    std::size_t rest = m;
    double k2 = 0.0, ko2 = 0.0;
    std::int64_t xi2 = 0;
    bool keep = true;
    for (int a = dim - 1; a >= 0; --a) {
      const auto i = static_cast<int>(rest % un);
      rest /= un;
      const int xi = i < n / 2 ? i : i - n;
      t->xi[a][m] = xi;
      t->k[a][m] = unit * xi;
      t->k_odd[a][m] = (xi == -n / 2) ? 0.0 : unit * xi;
      k2 += t->k[a][m] * t->k[a][m];
      ko2 += t->k_odd[a][m] * t->k_odd[a][m];
      xi2 += static_cast<std::int64_t>(xi) * xi;
      if (3 * std::abs(xi) > n) keep = false;
    }
    t->k2[m] = k2;
    t->k_mag[m] = std::sqrt(k2);
    t->k_odd2[m] = ko2;
    t->retained[m] = keep ? 1 : 0;
    if (keep) {
      auto [it, inserted] = shells.try_emplace(xi2, static_cast<std::int32_t>(shells.size()));
      t->shell[m] = it->second;
    }
  }
  t->shell_xi2.resize(shells.size());
  for (auto [xi2, idx] : shells) t->shell_xi2[static_cast<std::size_t>(idx)] = xi2;

  t->fft = std::make_unique<FftPlans>(dim, n);
  return Grid(std::move(t));
}

}  // namespace criticalflow
