#include "criticalflow/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "criticalflow/helmholtz.hpp"
#include "criticalflow/ins_solver.hpp"
#include "criticalflow/spectral.hpp"

namespace criticalflow {

PerturbationTrajectory perturbation_fields(const Trajectory& cns, const Trajectory& ins) {
  if (!(cns.grid == ins.grid)) throw std::invalid_argument("runs use different grids");
  if (cns.t.size() != ins.t.size()) throw std::invalid_argument("runs have different time grids");
  for (std::size_t i = 0; i < cns.t.size(); ++i)
    if (std::abs(cns.t[i] - ins.t[i]) > 1e-12 * std::max(1.0, std::abs(cns.t[i])))
      throw std::invalid_argument("runs have different time grids");
  PerturbationTrajectory p;
  p.grid = cns.grid;
  p.mu = cns.mu;
  p.nu = cns.nu();
  p.t = cns.t;
  for (std::size_t i = 0; i < cns.size(); ++i) {
    SpectralField u = cns.v[i] - ins.v[i];
    SpectralField ut = cns.v_t[i] - ins.v_t[i];
    p.Qu.push_back(project_Q(u));
    p.Pu.push_back(project_P(u));
    p.Qu_t.push_back(project_Q(ut));
    p.Pu_t.push_back(project_P(ut));
    p.u.push_back(std::move(u));
    p.u_t.push_back(std::move(ut));
    p.a.push_back(cns.has_density() ? cns.a[i] : SpectralField(cns.grid, 1));
    p.a_t.push_back(cns.has_density() ? cns.a_t[i] : SpectralField(cns.grid, 1));
    p.V.push_back(ins.v[i]);
    p.V_t.push_back(ins.v_t[i]);
  }
  return p;
}

FunctionalReport compute_XYZWV(const PerturbationTrajectory& pert, const DyadicPartition& p,
                               double nu) {
  if (pert.size() == 0) throw std::invalid_argument("empty perturbation trajectory");
  FunctionalReport r;
  const int d = pert.grid.dim();
  const double s = 0.5 * d - 1.0;
  const double mu = pert.mu;
  r.nu = nu;
  r.s = s;
  r.t = pert.t;
  r.j_min = p.j_min;
  const std::size_t n = pert.size();
  for (auto* v : {&r.Qu_norm, &r.a_norm, &r.nu_grad_a_norm, &r.Pu_norm, &r.a_crit_norm,
                  &r.V_norm, &r.Qu_t_norm, &r.nu_lap_Qu_norm, &r.nu_lap_a_low_norm,
                  &r.grad_a_high_norm, &r.Pu_t_norm, &r.lap_Pu_norm, &r.V_t_norm, &r.lap_V_norm})
    v->resize(n);
  r.Lj.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pert.a[i];
    r.Qu_norm[i] = besov(p, pert.Qu[i], s);
    r.a_norm[i] = besov(p, a, s);
    r.nu_grad_a_norm[i] = nu * besov(p, a, s, 1);
    r.Pu_norm[i] = besov(p, pert.Pu[i], s);
    r.a_crit_norm[i] = besov(p, a, 0.5 * d);
    r.V_norm[i] = besov(p, pert.V[i], s);
    r.Qu_t_norm[i] = besov(p, pert.Qu_t[i], s);
    r.nu_lap_Qu_norm[i] = nu * besov(p, pert.Qu[i], s, 2);
    const auto [low, high] = split_low_high(p, a, nu);
    r.nu_lap_a_low_norm[i] = nu * besov(p, low, s, 2);
    r.grad_a_high_norm[i] = besov(p, high, s, 1);
    r.Pu_t_norm[i] = besov(p, pert.Pu_t[i], s);
    r.lap_Pu_norm[i] = mu * besov(p, pert.Pu[i], s, 2);
    r.V_t_norm[i] = besov(p, pert.V_t[i], s);
    r.lap_V_norm[i] = mu * besov(p, pert.V[i], s, 2);
    auto& lj = r.Lj[i];
    lj.resize(static_cast<std::size_t>(p.blocks()));
    for (int j = p.j_min; j <= p.j_max; ++j)
      lj[static_cast<std::size_t>(j - p.j_min)] =
          lj_energy(dyadic_block(p, a, j), dyadic_block(p, pert.Qu[i], j), nu);
  }
  std::vector<double> xsup(n), yrate(n), wrate(n), vrate(n);
  for (std::size_t i = 0; i < n; ++i) {
    xsup[i] = r.Qu_norm[i] + r.a_norm[i] + r.nu_grad_a_norm[i];
    yrate[i] = r.Qu_t_norm[i] + r.nu_lap_Qu_norm[i] + r.nu_lap_a_low_norm[i] + r.grad_a_high_norm[i];
    wrate[i] = r.Pu_t_norm[i] + r.lap_Pu_norm[i];
    vrate[i] = r.V_t_norm[i] + r.lap_V_norm[i];
  }
  r.X = cumulative_max(xsup);
  r.Y = cumulative_trapezoid(r.t, yrate);
  r.Z = cumulative_max(r.Pu_norm);
  r.W = cumulative_trapezoid(r.t, wrate);
  r.V = cumulative_max(r.V_norm);
  const auto vint = cumulative_trapezoid(r.t, vrate);
  const auto asup = cumulative_max(r.a_crit_norm);
  r.E.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.V[i] += vint[i];
    r.E[i] = r.Z[i] + r.W[i] + asup[i];
  }
  return r;
}

double lj_energy(const SpectralField& aj, const SpectralField& quj, double nu) {
  if (!aj.is_scalar() || quj.components() != aj.grid().dim())
    throw std::invalid_argument("lj_energy expects a scalar a_j and a vector Qu_j");
  const SpectralField ga = gradient(aj);
  const double a2 = l2_inner(aj, aj);
  const double q2 = l2_inner(quj, quj);
  const double g2 = l2_inner(ga, ga);
  const double cross = l2_inner(quj, ga);
  const double total = 2.0 * a2 + 2.0 * q2 + 2.0 * nu * cross + nu * nu * g2;
  const double scale = 2.0 * a2 + 2.0 * q2 + nu * nu * g2;
  if (total < -1e-12 * std::max(1.0, scale))
    throw std::logic_error("negative localized energy " + std::to_string(total));
  return std::sqrt(std::max(total, 0.0));
}

double parabolic_split_rate(int j, double nu) {
  return std::min(nu * std::ldexp(1.0, 2 * j), 1.0 / nu);
}

InitialNorms initial_norms(const SpectralField& a0, const SpectralField& v0,
                           const DyadicPartition& p) {
  const double s = 0.5 * a0.grid().dim() - 1.0;
  return {besov(p, a0, s), besov(p, a0, s + 1.0), besov(p, project_Q(v0), s)};
}

SmallnessCheck check_smallness(const InitialNorms& init, double M, double mu, double nu, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("C must be positive");
  const double data = init.a0_low + nu * init.a0_high + init.Qv0 + M * M + mu * mu;
  SmallnessCheck r;
  r.lhs = C * std::exp(C * M) * data;
  r.rhs = std::sqrt(nu) * std::sqrt(mu);
  r.ratio = r.lhs / r.rhs;
  r.largest_C = smallest_exp_constant(r.rhs, data, M);
  return r;
}

BoundCheck check_theorem_bound(const FunctionalReport& report, const InitialNorms& init, double M,
                               double mu, double nu, double C) {
  const std::vector<double>& t = report.t;
  std::vector<double> q_rate(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    q_rate[i] = report.Qu_t_norm[i] + report.nu_lap_Qu_norm[i];
  BoundCheck b;
  b.lhs = cumulative_max(report.Qu_norm).back() + trapezoid(t, q_rate) +
          cumulative_max(report.a_norm).back() + nu * cumulative_max(report.a_crit_norm).back() +
          std::sqrt(nu) * (report.Z.back() + report.W.back());
  const double data = init.a0_low + nu * init.a0_high + init.Qv0 + M * M + mu * mu;
  b.rhs = C * std::exp(C * M) * data;
  b.empirical_C = smallest_exp_constant(b.lhs, data, M);
  return b;
}

}  // namespace criticalflow
