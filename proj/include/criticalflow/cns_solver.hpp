#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "criticalflow/field.hpp"
#include "criticalflow/kernels.hpp"
#include "criticalflow/littlewood_paley.hpp"
#include "criticalflow/time_schedule.hpp"
#include "criticalflow/trajectory.hpp"

namespace criticalflow {

struct ViscosityParams {
  double mu = 1.0;
  double lambda = 0.0;
  double nu() const { return lambda + 2.0 * mu; }
};

/// Throws std::invalid_argument unless mu > 0 and nu > 0.
void validate(const ViscosityParams& p);

/// P(rho) = rho^gamma / gamma, so P'(1) = 1.
struct PressureLaw {
  double gamma = 2.0;
  double pressure(double rho) const;
  double derivative(double rho) const;
};

class VacuumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CnsState {
  double t = 0.0;
  SpectralField a;
  SpectralField v;
  ViscosityParams params;
  PressureLaw law;
};

struct CnsRates {
  SpectralField da_dt;
  SpectralField dv_dt;
};

/// k(a) = P'(1 + a) - P'(1), evaluated on samples and dealiased.
SpectralField pressure_kappa(const PressureLaw& law, const SpectralField& a);

/// Full right-hand side of the mass and momentum equations (momentum
/// divided by rho), all products dealiased. Throws VacuumError if 1 + a <= 0.
CnsRates cns_rhs(const CnsState& state);
/// Part of cns_rhs kept for the exact per-mode solve:
/// (-div v, mu Lap v + (lambda + mu) grad div v - grad a).
CnsRates cns_linear(const CnsState& state);
/// cns_rhs minus cns_linear.
CnsRates cns_nonlinear(const CnsState& state);

/// Matrix of the longitudinal pair (b, w) = (-i a_hat, k_hat . v_hat) at
/// wavenumber kappa: [[0, -kappa], [kappa, -nu kappa^2]].
kernels::Mat2 acoustic_block(double kappa, double nu);

/// 0.5 (length / n) / (max|v| + sqrt(P'(rho_max))).
double cns_cfl_limit(const CnsState& s);

class CnsStepper {
 public:
  CnsStepper(Grid grid, ViscosityParams params, PressureLaw law,
             Integrator integrator = Integrator::EtdRk4);
  ~CnsStepper();
  CnsStepper(CnsStepper&&) noexcept;

  /// Throws CflError or VacuumError.
  CnsState step(const CnsState& s, double h);

 private:
  struct Tables;
  const Tables& tables(double h);

  Grid grid_;
  ViscosityParams params_;
  PressureLaw law_;
  Integrator integrator_;
  std::map<double, std::unique_ptr<Tables>> cache_;
  std::unique_ptr<CnsState> prev_;
  std::unique_ptr<CnsRates> prev_n_;
  double prev_h_ = 0.0;
};

CnsState cns_step(const CnsState& state, double dt, Integrator integrator = Integrator::EtdRk4);

struct CnsConfig {
  Grid grid;
  ViscosityParams params;
  PressureLaw law;
  double dt = 1e-3;
  double t_end = 1.0;
  int save_every = 1;
  Integrator integrator = Integrator::EtdRk4;
  double ramp_h0 = 0.0;
};

Trajectory run_cns(const CnsConfig& config, const SpectralField& a0, const SpectralField& v0);
Trajectory run_cns(const CnsConfig& config, const SpectralField& a0, const SpectralField& v0,
                   const TimeSchedule& schedule);

struct RescaledConfig {
  double mu = 1.0;
  double lambda = 0.0;
  double t_end = 0.0;
  double length = 0.0;
};

/// Normalizes the shear viscosity to 1 via (rho, v)(t, x) -> (rho, v)(mu t, mu x).
/// The rescaled run covers [0, t_end / mu] on a box of side length / mu.
RescaledConfig rescale_config(double mu, double lambda, double t_end, double length);

struct MonitorReport {
  double grad_v_integral = 0.0;   // int ||grad v||_{Linf} dt
  double a_sup_besov = 0.0;       // ||a||_{Linf(B^{d/2})}
  double rho_inf = 1.0;           // inf over samples and saved times of 1 + a
  bool flagged = false;
  std::string reason;
};

MonitorReport continuation_monitor(const Trajectory& traj, const DyadicPartition& p,
                                   double ceiling = 1e6, double rho_floor = 0.01);

/// Per-mode factors of one time step of the scheme applied to the linear
/// acoustic system at wavenumber kappa: the 2x2 map (b, w)^n -> (b, w)^{n+1}.
/// Multistep schemes return the 4x4 companion map on ((b,w)^n, (b,w)^{n-1})
/// via `companion_eigenvalues`.
kernels::Mat2 etd_linear_step(double kappa, double nu, double h);
std::vector<Complex> bdf2_companion_eigenvalues(double kappa, double nu, double h);

}  // namespace criticalflow
