#pragma once

#include <string>
#include <vector>

#include "criticalflow/field.hpp"

namespace criticalflow {

/// Saved states of one run with the right-hand side evaluated at each.
///
/// `v` holds V for incompressible runs and v for compressible runs; `a` and
/// `a_t` stay empty for incompressible runs.
struct Trajectory {
  std::string system;
  Grid grid;
  double mu = 1.0;
  double lambda = 0.0;
  double gamma = 2.0;

  std::vector<double> t;
  std::vector<SpectralField> v;
  std::vector<SpectralField> v_t;
  std::vector<SpectralField> a;
  std::vector<SpectralField> a_t;

  std::size_t size() const { return t.size(); }
  bool empty() const { return t.empty(); }
  bool has_density() const { return !a.empty(); }
  double nu() const { return lambda + 2.0 * mu; }
};

/// Trapezoid integral of samples y over the time levels t.
double trapezoid(const std::vector<double>& t, const std::vector<double>& y);
/// Running trapezoid integral; element i integrates over [t_0, t_i].
std::vector<double> cumulative_trapezoid(const std::vector<double>& t, const std::vector<double>& y);
/// Running maximum.
std::vector<double> cumulative_max(const std::vector<double>& y);

}  // namespace criticalflow
