#include "criticalflow/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "criticalflow/kernels.hpp"

namespace criticalflow {

namespace {

void check_components(const Grid& grid, int components) {
  if (!grid.valid()) throw std::invalid_argument("field on an invalid grid");
  if (components < 1 || components > grid.dim())
    throw std::invalid_argument("component count " + std::to_string(components) +
                                " is not 1..dim");
}

}  // namespace

PhysicalField::PhysicalField(Grid grid, int components)
    : grid_(std::move(grid)), components_(components) {
  check_components(grid_, components_);
  values_.assign(grid_.modes() * static_cast<std::size_t>(components_), 0.0);
}

PhysicalField::PhysicalField(Grid grid, int components, std::vector<double> values)
    : grid_(std::move(grid)), components_(components), values_(std::move(values)) {
  check_components(grid_, components_);
  if (values_.size() != grid_.modes() * static_cast<std::size_t>(components_))
    throw std::invalid_argument("sample array does not match grid shape");
}

std::span<double> PhysicalField::component(int c) {
  return std::span<double>(values_).subspan(static_cast<std::size_t>(c) * grid_.modes(),
                                            grid_.modes());
}

std::span<const double> PhysicalField::component(int c) const {
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(c) * grid_.modes(),
                                                  grid_.modes());
}

SpectralField::SpectralField(Grid grid, int components)
    : grid_(std::move(grid)), components_(components) {
  check_components(grid_, components_);
  coeffs_.assign(grid_.modes() * static_cast<std::size_t>(components_), Complex{});
}

SpectralField::SpectralField(Grid grid, int components, std::vector<Complex> coeffs)
    : grid_(std::move(grid)), components_(components), coeffs_(std::move(coeffs)) {
  check_components(grid_, components_);
  if (coeffs_.size() != grid_.modes() * static_cast<std::size_t>(components_))
    throw std::invalid_argument("coefficient array does not match grid shape");
}

std::span<Complex> SpectralField::component(int c) {
  return std::span<Complex>(coeffs_).subspan(static_cast<std::size_t>(c) * grid_.modes(),
                                             grid_.modes());
}

std::span<const Complex> SpectralField::component(int c) const {
  return std::span<const Complex>(coeffs_).subspan(static_cast<std::size_t>(c) * grid_.modes(),
                                                   grid_.modes());
}

void require_same_grid(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("fields live on different grids");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  return axpy(1.0, other);
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  return axpy(-1.0, other);
}

SpectralField& SpectralField::operator*=(double s) {
  kernels::scale(coeffs_, s);
  return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
  require_same_grid(*this, other);
  if (components_ != other.components_)
    throw std::invalid_argument("component count mismatch");
  kernels::axpy(coeffs_, s, other.coeffs_);
  return *this;
}

SpectralField component_of(const SpectralField& f, int c) {
  if (c < 0 || c >= f.components()) throw std::out_of_range("component index");
  auto src = f.component(c);
  return SpectralField(f.grid(), 1, std::vector<Complex>(src.begin(), src.end()));
}

SpectralField stack_components(std::span<const SpectralField> parts) {
  if (parts.empty()) throw std::invalid_argument("no components to stack");
  SpectralField out(parts[0].grid(), static_cast<int>(parts.size()));
  for (std::size_t c = 0; c < parts.size(); ++c) {
    require_same_grid(parts[0], parts[c]);
    if (!parts[c].is_scalar()) throw std::invalid_argument("stacked parts must be scalar");
    std::ranges::copy(parts[c].coeffs(), out.component(static_cast<int>(c)).begin());
  }
  return out;
}

SpectralField without_mean(SpectralField f) {
  for (int c = 0; c < f.components(); ++c) f.component(c)[0] = Complex{};
  return f;
}

double l2_norm(const SpectralField& f) {
  return std::sqrt(f.grid().volume() * kernels::sum_abs2(f.coeffs()));
}

double l2_inner(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  if (f.components() != g.components()) throw std::invalid_argument("component count mismatch");
  return f.grid().volume() * kernels::sum_real_conj_product(f.coeffs(), g.coeffs());
}

double max_coeff_diff(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g);
  if (f.components() != g.components()) throw std::invalid_argument("component count mismatch");
  double m = 0.0;
  auto a = f.coeffs();
  auto b = g.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double conjugate_symmetry_defect(const SpectralField& f) {
  const Grid& g = f.grid();
  const int d = g.dim();
  double m = 0.0;
  int neg[3];
  for (int c = 0; c < f.components(); ++c) {
    auto u = f.component(c);
    for (std::size_t i = 0; i < g.modes(); ++i) {
      for (int a = 0; a < d; ++a) neg[a] = -g.xi(a)[i];
      const std::size_t j = g.mode_index(std::span<const int>(neg, static_cast<std::size_t>(d)));
      m = std::max(m, std::abs(u[i] - std::conj(u[j])));
    }
  }
  return m;
}

}  // namespace criticalflow
