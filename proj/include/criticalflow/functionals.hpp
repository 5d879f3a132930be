#pragma once

#include <vector>

#include "criticalflow/field.hpp"
#include "criticalflow/littlewood_paley.hpp"
#include "criticalflow/trajectory.hpp"

namespace criticalflow {

/// u = v - V and its pieces at every common time level.
struct PerturbationTrajectory {
  Grid grid;
  double mu = 1.0;
  double nu = 1.0;
  std::vector<double> t;
  std::vector<SpectralField> u, Qu, Pu, u_t, Qu_t, Pu_t;
  std::vector<SpectralField> a, a_t;
  std::vector<SpectralField> V, V_t;

  std::size_t size() const { return t.size(); }
};

/// Throws std::invalid_argument unless both runs share grid and time levels.
PerturbationTrajectory perturbation_fields(const Trajectory& cns, const Trajectory& ins);

struct FunctionalReport {
  double nu = 0.0;
  double s = 0.0;  // d/2 - 1
  std::vector<double> t;
  // Running values; element i covers [0, t_i].
  std::vector<double> X, Y, Z, W, V, E;
  // Instantaneous norms at each level.
  std::vector<double> Qu_norm, a_norm, nu_grad_a_norm, Pu_norm, a_crit_norm, V_norm;
  // Per-level integrand pieces.
  std::vector<double> Qu_t_norm, nu_lap_Qu_norm, nu_lap_a_low_norm, grad_a_high_norm;
  std::vector<double> Pu_t_norm, lap_Pu_norm, V_t_norm, lap_V_norm;
  // L_j(t_i), indexed [i][j - j_min].
  std::vector<std::vector<double>> Lj;
  int j_min = 0;

  double X_final() const { return X.back(); }
  double Y_final() const { return Y.back(); }
  double Z_final() const { return Z.back(); }
  double W_final() const { return W.back(); }
  double V_final() const { return V.back(); }
  double E_final() const { return E.back(); }
};

/// X_d, Y_d, Z_d, W_d, V_d and the error E over time. Joint norms are sums
/// of the individual norms; the low/high split of a uses the given nu.
FunctionalReport compute_XYZWV(const PerturbationTrajectory& pert, const DyadicPartition& p,
                               double nu);

/// L_j = (int 2 a_j^2 + 2|Qu_j|^2 + 2 nu Qu_j . grad a_j + |nu grad a_j|^2)^{1/2}.
double lj_energy(const SpectralField& aj, const SpectralField& quj, double nu);

/// min(nu 2^{2j}, 1/nu).
double parabolic_split_rate(int j, double nu);

struct SmallnessCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  double largest_C = 0.0;  // largest C for which lhs <= rhs
};

/// Norms of the initial compressible part.
struct InitialNorms {
  double a0_low = 0.0;   // ||a0||_{B^{d/2-1}}
  double a0_high = 0.0;  // ||a0||_{B^{d/2}}
  double Qv0 = 0.0;      // ||Q v0||_{B^{d/2-1}}
};

InitialNorms initial_norms(const SpectralField& a0, const SpectralField& v0,
                           const DyadicPartition& p);

/// C e^{CM}(||a0|| + nu ||a0||_{B^{d/2}} + ||Qu0|| + M^2 + mu^2) <= sqrt(nu mu).
SmallnessCheck check_smallness(const InitialNorms& init, double M, double mu, double nu, double C);

struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double empirical_C = 0.0;
};

/// Left side: ||Qv||_{Linf} + ||Qv_t||_{L1} + nu ||grad^2 Qv||_{L1} + ||a||_{Linf}
/// + nu ||a||_{Linf(B^{d/2})} + nu^{1/2}(||Pv - V||_{Linf} + ||Pv_t - V_t||_{L1}
/// + mu ||grad^2(Pv - V)||_{L1}); right side C e^{CM}(data terms).
BoundCheck check_theorem_bound(const FunctionalReport& report, const InitialNorms& init, double M,
                               double mu, double nu, double C);

}  // namespace criticalflow
