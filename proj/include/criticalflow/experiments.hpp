#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "criticalflow/config.hpp"
#include "criticalflow/field.hpp"
#include "criticalflow/littlewood_paley.hpp"
#include "criticalflow/time_schedule.hpp"

namespace criticalflow {

struct InitSpec {
  // taylor-green | random-band | random-band-plus-density
  std::string kind = "taylor-green";
  // Taylor-Green amplitude, or ||v0||_{B^{d/2-1}} for the random kinds.
  double v_amplitude = 1.0;
  // ||Q v0||_{B^{d/2-1}} of an added random potential part.
  double q_amplitude = 0.0;
  // ||a0||_{B^{d/2}}; divided by nu when a_over_nu is set.
  double a_amplitude = 0.0;
  bool a_over_nu = false;
  int j_lo = 0;
  int j_hi = 1;
};

struct InitialData {
  SpectralField a0;
  SpectralField v0;
};

/// Deterministic in (spec, grid, seed, nu). Random parts are drawn on the
/// blocks j_lo..j_hi and rescaled by their measured Besov norm.
InitialData generate_initial_data(const InitSpec& spec, const DyadicPartition& p,
                                  std::uint64_t seed, double nu = 1.0);

/// (sin x cos y, -cos x sin y) scaled by amp; zero third component in 3D.
SpectralField taylor_green(const Grid& grid, double amp = 1.0);
/// Real random field with Gaussian coefficients on the blocks [j_lo, j_hi],
/// not normalized.
SpectralField random_band(const DyadicPartition& p, int components, int j_lo, int j_hi,
                          std::uint64_t seed, std::uint64_t stream);

struct ExperimentConfig {
  int dim = 2;
  int n = 64;
  double length = 2.0 * std::numbers::pi;
  double mu = 1.0;
  double gamma = 2.0;
  double dt = 2e-3;
  double t_end = 1.0;
  int save_every = 5;
  Integrator integrator = Integrator::EtdRk4;
  // Opening step of the shared schedule; negative picks 0.1 / (nu_max K^2)
  // with K the top wavenumber of the band, 0 disables the graded opening.
  double ramp_h0 = -1.0;
  std::vector<double> nu_values;
  std::vector<std::uint64_t> seeds;
  InitSpec init;
  std::filesystem::path output_dir = "sweep_out";
  double monitor_ceiling = 1e6;
  double C = 1.0;
  int threads = 1;
};

/// Throws std::invalid_argument on an inconsistent configuration.
void validate(const ExperimentConfig& c);
ExperimentConfig experiment_config_from(const Config& cfg);

struct SweepRow {
  double nu = 0.0;
  std::uint64_t seed = 0;
  double E = 0.0, Xd = 0.0, Yd = 0.0, Zd = 0.0, Wd = 0.0, Vd = 0.0;
  std::string flag = "ok";
  double wall_s = 0.0;
  // Diagnostics kept beside the main table.
  double M = 0.0;
  double bound_lhs = 0.0;
  double empirical_C = 0.0;
  double smallness_ratio = 0.0;
  double smallness_largest_C = 0.0;
  double grad_v_integral = 0.0;
  double a_sup_besov = 0.0;
  double rho_inf = 1.0;
  bool completed = true;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int seeds_used = 0;
  std::vector<double> seed_slopes;
  std::string status = "ok";
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::optional<FitResult> fit;
  bool all_completed = true;
};

/// Runs the sweep, appending rows to output_dir/sweep.csv as they finish
/// and skipping (nu, seed) pairs already present there.
SweepResult run_nu_sweep(const ExperimentConfig& config);

constexpr double kNoiseFloor = 1e-8;

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};
/// Least squares y = slope x + intercept. Needs two distinct x values.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Per-seed fits of log E against log nu over unflagged rows above the noise
/// floor, averaged. Returns nullopt when no seed has two usable rows.
std::optional<FitResult> fit_rate(const SweepResult& result);

/// sweep.csv, diagnostics.csv, fit.json (only with a fit) and plot_sweep.gp.
void emit_outputs(const SweepResult& result, const std::filesystem::path& dir);

/// Reads rows of a sweep.csv (and diagnostics.csv if present).
std::vector<SweepRow> read_sweep_rows(const std::filesystem::path& dir);

}  // namespace criticalflow
