#pragma once

#include <map>
#include <memory>
#include <optional>

#include "criticalflow/field.hpp"
#include "criticalflow/littlewood_paley.hpp"
#include "criticalflow/time_schedule.hpp"
#include "criticalflow/trajectory.hpp"

namespace criticalflow {

struct InsState {
  double t = 0.0;
  SpectralField V;
  double mu = 1.0;
};

struct InsConfig {
  Grid grid;
  double mu = 1.0;
  double dt = 1e-3;
  double t_end = 1.0;
  int save_every = 1;
  Integrator integrator = Integrator::EtdRk4;
  double ramp_h0 = 0.0;  // first step of the graded opening; 0 disables it
};

/// P(-V . grad V), dealiased.
SpectralField ins_nonlinear(const SpectralField& V);
/// P(-V . grad V) + mu Lap V.
SpectralField ins_rhs(const InsState& state);

/// 0.5 (length / n) / max|V|; infinite for V = 0.
double ins_cfl_limit(const SpectralField& V);

/// Time stepper holding per-step-size multiplier tables and, for the
/// multistep scheme, the previous level.
class InsStepper {
 public:
  InsStepper(Grid grid, double mu, Integrator integrator);
  ~InsStepper();
  InsStepper(InsStepper&&) noexcept;

  /// Throws CflError if h exceeds ins_cfl_limit.
  InsState step(const InsState& s, double h);
  Integrator integrator() const { return integrator_; }

 private:
  struct Tables;
  const Tables& tables(double h);

  Grid grid_;
  double mu_;
  Integrator integrator_;
  std::map<double, std::unique_ptr<Tables>> cache_;
  std::optional<SpectralField> prev_u_, prev_n_;
  double prev_h_ = 0.0;
};

InsState ins_step(const InsState& state, double dt, Integrator integrator = Integrator::EtdRk4);

/// Integrates from V0 (projected and dealiased first) and stores every
/// scheduled level with its right-hand side.
Trajectory run_ins(const InsConfig& config, const SpectralField& V0);
Trajectory run_ins(const InsConfig& config, const SpectralField& V0, const TimeSchedule& schedule);

/// max_t | ||V||^2 + 2 mu int ||grad V||^2 - ||V0||^2 | / ||V0||^2, with the
/// time integral corrected by the end-point derivatives of ||grad V||^2.
double energy_identity_residual(const Trajectory& traj);

/// V_d(t_i) = ||V||_{Linf(0,t_i;B^s)} + ||V_t||_{L1(B^s)} + mu ||grad^2 V||_{L1(B^s)}, s = d/2 - 1.
std::vector<double> vd_profile(const Trajectory& traj, const DyadicPartition& p);
/// Measured M: V_d at the final time.
double compute_M(const Trajectory& traj, const DyadicPartition& p);
/// C ||P V0||_{B^0} exp(C mu^-4 ||P V0||_{L2}^4); two-dimensional grids only.
double compute_M_bound(const SpectralField& V0, double mu, double C, const DyadicPartition& p);

/// Smallest C with V_d(T) <= C ||V0||_{B^0} exp(C mu^-4 ||V0||_{L2}^4).
double smallest_M_constant(const Trajectory& traj, const DyadicPartition& p);
/// mu^{1/4} ||V||_{L4(0,T;B^{1/2})} / ||V0||_{L2}.
double interpolation_constant(const Trajectory& traj, const DyadicPartition& p);

/// Smallest C > 0 with lhs <= C exp(C m) base (bisection; 0 if lhs == 0).
double smallest_exp_constant(double lhs, double base, double m);

}  // namespace criticalflow
