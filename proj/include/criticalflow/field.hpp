#pragma once

#include <complex>
#include <span>
#include <vector>

#include "criticalflow/fft.hpp"
#include "criticalflow/grid.hpp"

namespace criticalflow {

/// Real samples of a scalar or vector field, component-major then
/// row-major over the grid (axis 0 slowest).
class PhysicalField {
 public:
  PhysicalField(Grid grid, int components);
  PhysicalField(Grid grid, int components, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  std::span<double> component(int c);
  std::span<const double> component(int c) const;
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

 private:
  Grid grid_;
  int components_;
  std::vector<double> values_;
};

/// Fourier coefficients of a real field on a periodic grid.
///
/// The full coefficient set is stored (no half-spectrum packing), normalized
/// so that the zero mode equals the spatial mean. Components are stored
/// one after another, each in grid mode order.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(Grid grid, int components);
  SpectralField(Grid grid, int components, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  bool is_scalar() const { return components_ == 1; }
  std::size_t modes() const { return grid_.modes(); }

  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;
  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }

  /// Spatial mean of component c (its zero mode).
  double mean(int c = 0) const { return component(c)[0].real(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);
  /// this += s * other
  SpectralField& axpy(double s, const SpectralField& other);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  Grid grid_;
  int components_ = 0;
  std::vector<Complex> coeffs_;
};

/// Extracts component c as a scalar field.
SpectralField component_of(const SpectralField& f, int c);
/// Stacks scalar fields into one vector field.
SpectralField stack_components(std::span<const SpectralField> parts);
/// Copy of f with the zero mode of every component set to zero.
SpectralField without_mean(SpectralField f);

/// L2 norm over the periodic box, by Parseval: ||f||^2 = |box| sum |f_hat|^2.
double l2_norm(const SpectralField& f);
/// Real L2 inner product over the box, summed over components.
double l2_inner(const SpectralField& f, const SpectralField& g);
/// Largest coefficient-wise modulus of f - g.
double max_coeff_diff(const SpectralField& f, const SpectralField& g);
/// Largest |f_hat(xi) - conj(f_hat(-xi))| over all modes and components.
double conjugate_symmetry_defect(const SpectralField& f);

void require_same_grid(const SpectralField& f, const SpectralField& g);

}  // namespace criticalflow
