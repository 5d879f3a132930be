#include "criticalflow/ins_solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "criticalflow/helmholtz.hpp"
#include "criticalflow/kernels.hpp"
#include "criticalflow/phi_functions.hpp"
#include "criticalflow/spectral.hpp"

namespace criticalflow {

namespace {

SpectralField multiplied(const SpectralField& f, const std::vector<double>& m) {
  SpectralField out = f;
  for (int c = 0; c < f.components(); ++c) kernels::apply_multiplier(out.component(c), m);
  return out;
}

}  // namespace

SpectralField ins_nonlinear(const SpectralField& V) {
  SpectralField n = advect(V, V);
  n *= -1.0;
  return project_P(n);
}

SpectralField ins_rhs(const InsState& state) {
  SpectralField r = ins_nonlinear(state.V);
  r.axpy(state.mu, laplacian(dealias(state.V)));
  return r;
}

double ins_cfl_limit(const SpectralField& V) {
  const double vmax = max_pointwise_norm(V);
  if (vmax == 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * V.grid().spacing() / vmax;
}

struct InsStepper::Tables {
  std::vector<double> e_half, e_full, p1_half, f1, f2, f3, implicit;
};

InsStepper::InsStepper(Grid grid, double mu, Integrator integrator)
    : grid_(std::move(grid)), mu_(mu), integrator_(integrator) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
}

InsStepper::~InsStepper() = default;
InsStepper::InsStepper(InsStepper&&) noexcept = default;

const InsStepper::Tables& InsStepper::tables(double h) {
  auto it = cache_.find(h);
  if (it != cache_.end()) return *it->second;
  auto t = std::make_unique<Tables>();
  const std::size_t m = grid_.modes();
  auto shell = grid_.shell();
  auto xi2 = grid_.shell_xi2();
  const double unit2 = grid_.wavenumber_unit() * grid_.wavenumber_unit();
  const std::size_t ns = xi2.size();
  std::vector<double> se_half(ns), se_full(ns), sp1(ns), sf1(ns), sf2(ns), sf3(ns), simp(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    const double lam = -mu_ * unit2 * static_cast<double>(xi2[s]);
    const double z = lam * h;
    se_half[s] = std::exp(0.5 * z);
    se_full[s] = std::exp(z);
    sp1[s] = 0.5 * h * phi_k(1, 0.5 * z);
    const double p1 = phi_k(1, z), p2 = phi_k(2, z), p3 = phi_k(3, z);
    sf1[s] = h * (p1 - 3.0 * p2 + 4.0 * p3);
    sf2[s] = 2.0 * h * (p2 - 2.0 * p3);
    sf3[s] = h * (4.0 * p3 - p2);
    simp[s] = -lam;
  }
  auto spread = [&](const std::vector<double>& src, std::vector<double>& dst) {
    dst.assign(m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (shell[i] >= 0) dst[i] = src[static_cast<std::size_t>(shell[i])];
  };
  spread(se_half, t->e_half);
  spread(se_full, t->e_full);
  spread(sp1, t->p1_half);
  spread(sf1, t->f1);
  spread(sf2, t->f2);
  spread(sf3, t->f3);
  spread(simp, t->implicit);  // mu |k|^2 on retained modes
  auto& ref = *t;
  cache_.emplace(h, std::move(t));
  return ref;
}

InsState InsStepper::step(const InsState& s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("time step must be positive");
  const double limit = ins_cfl_limit(s.V);
  if (h > limit)
    throw CflError("time step " + std::to_string(h) + " exceeds CFL limit " + std::to_string(limit),
                   0.9 * limit);
  const Tables& tb = tables(h);
  const SpectralField u = dealias(s.V);
  InsState out{s.t + h, SpectralField(grid_, grid_.dim()), mu_};

  switch (integrator_) {
    case Integrator::EtdRk4: {
      const SpectralField nu = ins_nonlinear(u);
      const SpectralField eu = multiplied(u, tb.e_half);
      SpectralField a = eu + multiplied(nu, tb.p1_half);
      const SpectralField na = ins_nonlinear(a);
      SpectralField b = eu + multiplied(na, tb.p1_half);
      const SpectralField nb = ins_nonlinear(b);
      SpectralField c = multiplied(a, tb.e_half);
      SpectralField forcing = nb;
      forcing *= 2.0;
      forcing -= nu;
      c += multiplied(forcing, tb.p1_half);
      const SpectralField nc = ins_nonlinear(c);
      SpectralField next = multiplied(u, tb.e_full);
      next += multiplied(nu, tb.f1);
      next += multiplied(na + nb, tb.f2);
      next += multiplied(nc, tb.f3);
      out.V = std::move(next);
      break;
    }
    case Integrator::IfRk4: {
      const SpectralField k1 = ins_nonlinear(u);
      SpectralField y = u;
      y.axpy(0.5 * h, k1);
      const SpectralField k2 = ins_nonlinear(multiplied(y, tb.e_half));
      SpectralField eu = multiplied(u, tb.e_half);
      y = eu;
      y.axpy(0.5 * h, k2);
      const SpectralField k3 = ins_nonlinear(y);
      y = multiplied(u, tb.e_full);
      y.axpy(h, multiplied(k3, tb.e_half));
      const SpectralField k4 = ins_nonlinear(y);
      SpectralField next = multiplied(u, tb.e_full);
      next.axpy(h / 6.0, multiplied(k1, tb.e_full));
      next.axpy(h / 3.0, multiplied(k2, tb.e_half));
      next.axpy(h / 3.0, multiplied(k3, tb.e_half));
      next.axpy(h / 6.0, k4);
      out.V = std::move(next);
      break;
    }
    case Integrator::ImexBdf2: {
      const SpectralField n0 = ins_nonlinear(u);
      std::vector<double> inv(tb.implicit.size(), 0.0);
      SpectralField rhs(grid_, grid_.dim());
      if (prev_u_ && prev_h_ == h) {
        const double alpha = 1.5 / h;
        for (std::size_t i = 0; i < inv.size(); ++i)
          inv[i] = grid_.shell()[i] >= 0 ? 1.0 / (alpha + tb.implicit[i]) : 0.0;
        rhs.axpy(2.0 / h, u);
        rhs.axpy(-0.5 / h, *prev_u_);
        rhs.axpy(2.0, n0);
        rhs.axpy(-1.0, *prev_n_);
      } else {
        for (std::size_t i = 0; i < inv.size(); ++i)
          inv[i] = grid_.shell()[i] >= 0 ? 1.0 / (1.0 / h + tb.implicit[i]) : 0.0;
        rhs.axpy(1.0 / h, u);
        rhs.axpy(1.0, n0);
      }
      out.V = multiplied(rhs, inv);
      prev_u_ = u;
      prev_n_ = n0;
      prev_h_ = h;
      break;
    }
  }
  out.V = project_P(out.V);
  return out;
}

InsState ins_step(const InsState& state, double dt, Integrator integrator) {
  InsStepper stepper(state.V.grid(), state.mu, integrator);
  return stepper.step(state, dt);
}

Trajectory run_ins(const InsConfig& config, const SpectralField& V0) {
  return run_ins(config, V0,
                 make_schedule(config.dt, config.t_end, config.save_every, config.ramp_h0));
}

Trajectory run_ins(const InsConfig& config, const SpectralField& V0, const TimeSchedule& schedule) {
  if (!(V0.grid() == config.grid)) throw std::invalid_argument("initial data on another grid");
  Trajectory traj;
  traj.system = "ins";
  traj.grid = config.grid;
  traj.mu = config.mu;
  InsStepper stepper(config.grid, config.mu, config.integrator);
  InsState s{0.0, project_P(dealias(V0)), config.mu};
  auto record = [&](const InsState& st) {
    traj.t.push_back(st.t);
    traj.v.push_back(st.V);
    traj.v_t.push_back(ins_rhs(st));
  };
  record(s);
  for (std::size_t i = 0; i < schedule.steps(); ++i) {
    s = stepper.step(s, schedule.h[i]);
    s.t = schedule.times[i + 1];
    if (schedule.save[i + 1]) record(s);
  }
  return traj;
}

double energy_identity_residual(const Trajectory& traj) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  const Grid& g = traj.grid;
  auto k2 = g.k2();
  const double vol = g.volume();
  const std::size_t n = traj.size();
  std::vector<double> energy(n), diss(n), ddiss(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& V = traj.v[i];
    const auto& Vt = traj.v_t[i];
    double e = 0.0, d = 0.0, dd = 0.0;
    for (int c = 0; c < V.components(); ++c) {
      auto u = V.component(c);
      auto ut = Vt.component(c);
      for (std::size_t m = 0; m < u.size(); ++m) {
        e += std::norm(u[m]);
        d += k2[m] * std::norm(u[m]);
        dd += 2.0 * k2[m] * (std::conj(u[m]) * ut[m]).real();
      }
    }
    energy[i] = vol * e;
    diss[i] = vol * d;
    ddiss[i] = vol * dd;
  }
  if (energy[0] == 0.0) return 0.0;
  double integral = 0.0, worst = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double h = traj.t[i] - traj.t[i - 1];
    integral += 0.5 * h * (diss[i - 1] + diss[i]) + h * h / 12.0 * (ddiss[i - 1] - ddiss[i]);
    worst = std::max(worst, std::abs(energy[i] + 2.0 * traj.mu * integral - energy[0]));
  }
  return worst / energy[0];
}

std::vector<double> vd_profile(const Trajectory& traj, const DyadicPartition& p) {
  const double s = 0.5 * traj.grid.dim() - 1.0;
  std::vector<double> sup(traj.size()), rate(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    sup[i] = besov(p, traj.v[i], s);
    rate[i] = besov(p, traj.v_t[i], s) + traj.mu * besov(p, traj.v[i], s, 2);
  }
  auto m = cumulative_max(sup);
  auto integral = cumulative_trapezoid(traj.t, rate);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] += integral[i];
  return m;
}

double compute_M(const Trajectory& traj, const DyadicPartition& p) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  return vd_profile(traj, p).back();
}

double compute_M_bound(const SpectralField& V0, double mu, double C, const DyadicPartition& p) {
  if (V0.grid().dim() != 2) throw std::invalid_argument("explicit M bound is two-dimensional");
  const SpectralField pv = project_P(V0);
  const double l2 = l2_norm(without_mean(pv));
  return C * besov(p, pv, 0.0) * std::exp(C * std::pow(l2, 4) / std::pow(mu, 4));
}

double smallest_exp_constant(double lhs, double base, double m) {
  if (lhs <= 0.0) return 0.0;
  if (!(base > 0.0)) return std::numeric_limits<double>::infinity();
  auto f = [&](double c) { return c * std::exp(c * m) * base; };
  double hi = 1.0;
  while (f(hi) < lhs) {
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < lhs ? lo : hi) = mid;
  }
  return hi;
}

double smallest_M_constant(const Trajectory& traj, const DyadicPartition& p) {
  const double vd = compute_M(traj, p);
  const double b0 = besov(p, traj.v.front(), 0.5 * traj.grid.dim() - 1.0);
  const double l2 = l2_norm(without_mean(traj.v.front()));
  return smallest_exp_constant(vd, b0, std::pow(l2, 4) / std::pow(traj.mu, 4));
}

double interpolation_constant(const Trajectory& traj, const DyadicPartition& p) {
  const double s = 0.5 * traj.grid.dim() - 0.5;
  std::vector<double> y(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) y[i] = std::pow(besov(p, traj.v[i], s), 4);
  const double l2 = l2_norm(without_mean(traj.v.front()));
  if (l2 == 0.0) return 0.0;
  return std::pow(traj.mu, 0.25) * std::pow(trapezoid(traj.t, y), 0.25) / l2;
}

}  // namespace criticalflow
