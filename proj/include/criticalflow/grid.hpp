#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace criticalflow {

class FftPlans;

/// Per-mode lookup tables shared by every field living on one grid.
///
/// Modes are stored row-major over the integer wavevector index, axis 0
/// slowest. Axis index i maps to xi = i for i < n/2 and xi = i - n otherwise,
/// so each axis covers {-n/2, ..., n/2 - 1}.
struct GridTables {
  int dim = 0;
  int n = 0;
  double length = 0.0;
  std::size_t modes = 0;

  std::vector<std::int32_t> xi[3];  // integer wavevector per axis
  std::vector<double> k[3];         // physical wavevector 2*pi*xi/length
  std::vector<double> k_odd[3];     // same, with the Nyquist component zeroed
  std::vector<double> k2;           // |k|^2
  std::vector<double> k_mag;        // |k|
  std::vector<double> k_odd2;       // |k_odd|^2
  std::vector<std::uint8_t> retained;  // 2/3-rule mask

  // Distinct |xi|^2 values on retained modes; shell[m] == -1 outside.
  std::vector<std::int32_t> shell;
  std::vector<std::int64_t> shell_xi2;

  std::unique_ptr<FftPlans> fft;

  GridTables();
  ~GridTables();
  GridTables(const GridTables&) = delete;
  GridTables& operator=(const GridTables&) = delete;
};

/// Periodic grid with n points per axis on [0, length)^dim.
///
/// A cheap handle: copies share the immutable tables (and FFT plans).
class Grid {
 public:
  Grid() = default;

  int dim() const { return tables_->dim; }
  int n() const { return tables_->n; }
  double length() const { return tables_->length; }
  std::size_t modes() const { return tables_->modes; }
  double spacing() const { return tables_->length / tables_->n; }
  double volume() const;
  /// 2*pi/length, the physical size of one unit of integer wavevector.
  double wavenumber_unit() const { return 2.0 * std::numbers::pi / tables_->length; }

  std::span<const std::int32_t> xi(int axis) const { return tables_->xi[axis]; }
  std::span<const double> k(int axis) const { return tables_->k[axis]; }
  std::span<const double> k_odd(int axis) const { return tables_->k_odd[axis]; }
  std::span<const double> k2() const { return tables_->k2; }
  std::span<const double> k_mag() const { return tables_->k_mag; }
  std::span<const double> k_odd2() const { return tables_->k_odd2; }
  std::span<const std::uint8_t> retained() const { return tables_->retained; }
  std::span<const std::int32_t> shell() const { return tables_->shell; }
  std::span<const std::int64_t> shell_xi2() const { return tables_->shell_xi2; }

  /// Linear index of the mode with the given integer wavevector.
  std::size_t mode_index(std::span<const int> xi) const;
  /// Physical coordinate of sample `index` along `axis`.
  double coordinate(std::size_t index, int axis) const;

  const FftPlans& fft() const { return *tables_->fft; }
  bool valid() const { return static_cast<bool>(tables_); }

  friend bool operator==(const Grid& a, const Grid& b);

 private:
  friend Grid make_grid(int dim, int n, double length);
  explicit Grid(std::shared_ptr<const GridTables> t) : tables_(std::move(t)) {}
  std::shared_ptr<const GridTables> tables_;
};

/// Validates and builds a grid. Throws std::invalid_argument unless
/// dim is 2 or 3, n >= 8 is a power of two, and length > 0.
Grid make_grid(int dim, int n, double length = 2.0 * std::numbers::pi);

}  // namespace criticalflow
