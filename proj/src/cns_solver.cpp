#include "criticalflow/cns_solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "criticalflow/phi_functions.hpp"
#include "criticalflow/spectral.hpp"

namespace criticalflow {

namespace {

using kernels::Mat2;

Mat2 scaled(const Mat2& m, double s) { return {m.m00 * s, m.m01 * s, m.m10 * s, m.m11 * s}; }

Mat2 combine(const Mat2& a, double ca, const Mat2& b, double cb) {
  return {ca * a.m00 + cb * b.m00, ca * a.m01 + cb * b.m01, ca * a.m10 + cb * b.m10,
          ca * a.m11 + cb * b.m11};
}

// Pair (a, v) with the vector-space operations the integrators need.
struct Pair {
  SpectralField a;
  SpectralField v;

  Pair& axpy(double s, const Pair& o) {
    a.axpy(s, o.a);
    v.axpy(s, o.v);
    return *this;
  }
};

Pair operator+(Pair x, const Pair& y) { return x.axpy(1.0, y); }

Pair to_pair(CnsRates r) { return {std::move(r.da_dt), std::move(r.dv_dt)}; }

struct ShellOperator {
  std::vector<Mat2> block;     // per shell, on (b, w)
  std::vector<double> shear;   // per shell, on the transverse part
};

// Applies a per-shell linear operator to (a, v): the longitudinal pair goes
// through the 2x2 block, the transverse velocity through the scalar factor.
Pair apply_operator(const ShellOperator& op, const Pair& x) {
  const Grid& g = x.a.grid();
  const int d = g.dim();
  const std::size_t m = g.modes();
  auto shell = g.shell();
  auto kmag = g.k_mag();
  std::vector<Complex> b(m), w_in(m);
  auto a_in = x.a.component(0);
  for (std::size_t i = 0; i < m; ++i) {
    b[i] = Complex(0.0, -1.0) * a_in[i];
    if (kmag[i] > 0.0) {
      Complex s{};
      for (int c = 0; c < d; ++c) s += g.k(c)[i] * x.v.component(c)[i];
      w_in[i] = s / kmag[i];
    }
  }
  std::vector<Complex> w = w_in;
  kernels::apply_block2(b, w, shell, op.block);

  Pair out{SpectralField(g, 1), SpectralField(g, d)};
  auto a_out = out.a.component(0);
  for (std::size_t i = 0; i < m; ++i) a_out[i] = Complex(0.0, 1.0) * b[i];
  for (int c = 0; c < d; ++c) {
    auto kc = g.k(c);
    auto vin = x.v.component(c);
    auto vout = out.v.component(c);
    for (std::size_t i = 0; i < m; ++i) {
      if (shell[i] < 0) continue;
      const double khat = kmag[i] > 0.0 ? kc[i] / kmag[i] : 0.0;
      const Complex transverse = vin[i] - khat * w_in[i];
      vout[i] = op.shear[static_cast<std::size_t>(shell[i])] * transverse + khat * w[i];
    }
  }
  return out;
}

void check_vacuum(const SpectralField& a) {
  const double rho_min = 1.0 + min_value(a);
  if (!(rho_min > 0.0))
    throw VacuumError("density reached " + std::to_string(rho_min) + " (vacuum)");
}

}  // namespace

void validate(const ViscosityParams& p) {
  if (!(p.mu > 0.0)) throw std::invalid_argument("shear viscosity must be positive");
  if (!(p.nu() > 0.0)) throw std::invalid_argument("lambda + 2 mu must be positive");
}

double PressureLaw::pressure(double rho) const { return std::pow(rho, gamma) / gamma; }
double PressureLaw::derivative(double rho) const { return std::pow(rho, gamma - 1.0); }

SpectralField pressure_kappa(const PressureLaw& law, const SpectralField& a) {
  if (!a.is_scalar()) throw std::invalid_argument("pressure_kappa expects a scalar field");
  PhysicalField s = to_physical(dealias(a));
  for (auto& x : s.values()) {
    if (!(1.0 + x > 0.0)) throw VacuumError("vacuum in pressure evaluation");
    x = law.derivative(1.0 + x) - 1.0;
  }
  return dealias(to_spectral(s));
}

CnsRates cns_linear(const CnsState& state) {
  const SpectralField a = dealias(state.a);
  const SpectralField v = dealias(state.v);
  SpectralField da = divergence(v);
  da *= -1.0;
  SpectralField dv = laplacian(v);
  dv *= state.params.mu;
  dv.axpy(state.params.lambda + state.params.mu, gradient(divergence(v)));
  dv -= gradient(a);
  return {std::move(da), std::move(dv)};
}

CnsRates cns_nonlinear(const CnsState& state) {
  const Grid& g = state.v.grid();
  const int d = g.dim();
  const SpectralField a = dealias(state.a);
  const SpectralField v = dealias(state.v);
  check_vacuum(a);

  const PhysicalField as = to_physical(a);
  const PhysicalField vs = to_physical(v);
  PhysicalField flux(g, d);
  for (int c = 0; c < d; ++c) {
    auto f = flux.component(c);
    auto vc = vs.component(c);
    auto av = as.component(0);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = av[i] * vc[i];
  }
  SpectralField da = divergence(dealias(to_spectral(flux)));
  da *= -1.0;

  SpectralField visc = laplacian(v);
  visc *= state.params.mu;
  visc.axpy(state.params.lambda + state.params.mu, gradient(divergence(v)));
  const PhysicalField viscs = to_physical(visc);
  const PhysicalField grads = to_physical(gradient(a));
  PhysicalField forcing(g, d);
  const double gm2 = state.law.gamma - 2.0;
  auto av = as.component(0);
  for (int c = 0; c < d; ++c) {
    auto f = forcing.component(c);
    auto vc = viscs.component(c);
    auto gc = grads.component(c);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double rho = 1.0 + av[i];
      const double k = gm2 == 0.0 ? 0.0 : std::pow(rho, gm2) - 1.0;
      f[i] = av[i] / rho * vc[i] + k * gc[i];
    }
  }
  SpectralField dv = advect(v, v);
  dv += dealias(to_spectral(forcing));
  dv *= -1.0;
  return {std::move(da), std::move(dv)};
}

CnsRates cns_rhs(const CnsState& state) {
  CnsRates n = cns_nonlinear(state);
  CnsRates l = cns_linear(state);
  n.da_dt += l.da_dt;
  n.dv_dt += l.dv_dt;
  return n;
}

Mat2 acoustic_block(double kappa, double nu) { return {0.0, -kappa, kappa, -nu * kappa * kappa}; }

double cns_cfl_limit(const CnsState& s) {
  const double rho_max = 1.0 + max_abs(s.a);
  const double speed = max_pointwise_norm(s.v) + std::sqrt(s.law.derivative(rho_max));
  return 0.5 * s.v.grid().spacing() / speed;
}

struct CnsStepper::Tables {
  ShellOperator e_half, e_full, p1_half, f1, f2, f3;
  ShellOperator implicit_bdf2, implicit_euler;
};

CnsStepper::CnsStepper(Grid grid, ViscosityParams params, PressureLaw law, Integrator integrator)
    : grid_(std::move(grid)), params_(params), law_(law), integrator_(integrator) {
  validate(params_);
  if (!(law_.gamma >= 1.0)) throw std::invalid_argument("gamma must be >= 1");
}

CnsStepper::~CnsStepper() = default;
CnsStepper::CnsStepper(CnsStepper&&) noexcept = default;

const CnsStepper::Tables& CnsStepper::tables(double h) {
  auto it = cache_.find(h);
  if (it != cache_.end()) return *it->second;
  auto t = std::make_unique<Tables>();
  auto xi2 = grid_.shell_xi2();
  const std::size_t ns = xi2.size();
  for (ShellOperator* op : {&t->e_half, &t->e_full, &t->p1_half, &t->f1, &t->f2, &t->f3,
                            &t->implicit_bdf2, &t->implicit_euler}) {
    op->block.resize(ns);
    op->shear.resize(ns);
  }
  const double nu = params_.nu();
  const double mu = params_.mu;
  for (std::size_t s = 0; s < ns; ++s) {
    const double kappa = grid_.wavenumber_unit() * std::sqrt(static_cast<double>(xi2[s]));
    const Mat2 hb = scaled(acoustic_block(kappa, nu), h);
    const Mat2 hb2 = scaled(hb, 0.5);
    const double z = -mu * kappa * kappa * h;
    if (integrator_ == Integrator::ImexBdf2) {
      for (auto [op, alpha] : {std::pair{&t->implicit_bdf2, 1.5 / h}, {&t->implicit_euler, 1.0 / h}}) {
        const double det = alpha * (alpha + nu * kappa * kappa) + kappa * kappa;
        op->block[s] = {(alpha + nu * kappa * kappa) / det, -kappa / det, kappa / det, alpha / det};
        op->shear[s] = 1.0 / (alpha + mu * kappa * kappa);
      }
      continue;
    }
    t->e_half.block[s] = matrix_phi(0, hb2);
    t->e_half.shear[s] = std::exp(0.5 * z);
    t->e_full.block[s] = matrix_phi(0, hb);
    t->e_full.shear[s] = std::exp(z);
    t->p1_half.block[s] = scaled(matrix_phi(1, hb2), 0.5 * h);
    t->p1_half.shear[s] = 0.5 * h * phi_k(1, 0.5 * z);
    const Mat2 p1 = matrix_phi(1, hb), p2 = matrix_phi(2, hb), p3 = matrix_phi(3, hb);
    t->f1.block[s] = scaled(combine(combine(p1, 1.0, p2, -3.0), 1.0, p3, 4.0), h);
    t->f2.block[s] = scaled(combine(p2, 1.0, p3, -2.0), 2.0 * h);
    t->f3.block[s] = scaled(combine(p3, 4.0, p2, -1.0), h);
    const double q1 = phi_k(1, z), q2 = phi_k(2, z), q3 = phi_k(3, z);
    t->f1.shear[s] = h * (q1 - 3.0 * q2 + 4.0 * q3);
    t->f2.shear[s] = 2.0 * h * (q2 - 2.0 * q3);
    t->f3.shear[s] = h * (4.0 * q3 - q2);
  }
  auto& ref = *t;
  cache_.emplace(h, std::move(t));
  return ref;
}

CnsState CnsStepper::step(const CnsState& s, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("time step must be positive");
  check_vacuum(s.a);
  const double limit = cns_cfl_limit(s);
  if (h > limit)
    throw CflError("time step " + std::to_string(h) + " exceeds CFL limit " + std::to_string(limit),
                   0.9 * limit);
  const Tables& tb = tables(h);
  auto N = [&](const Pair& x) {
    return to_pair(cns_nonlinear(CnsState{0.0, x.a, x.v, params_, law_}));
  };
  const Pair u{dealias(s.a), dealias(s.v)};
  Pair next;
  switch (integrator_) {
    case Integrator::EtdRk4: {
      const Pair nu = N(u);
      const Pair eu = apply_operator(tb.e_half, u);
      const Pair a = eu + apply_operator(tb.p1_half, nu);
      const Pair na = N(a);
      const Pair b = eu + apply_operator(tb.p1_half, na);
      const Pair nb = N(b);
      Pair forcing = nb;
      forcing.axpy(1.0, nb).axpy(-1.0, nu);
      const Pair c = apply_operator(tb.e_half, a) + apply_operator(tb.p1_half, forcing);
      const Pair nc = N(c);
      next = apply_operator(tb.e_full, u);
      next.axpy(1.0, apply_operator(tb.f1, nu));
      next.axpy(1.0, apply_operator(tb.f2, na + nb));
      next.axpy(1.0, apply_operator(tb.f3, nc));
      break;
    }
    case Integrator::IfRk4: {
      const Pair k1 = N(u);
      Pair y = u;
      y.axpy(0.5 * h, k1);
      const Pair k2 = N(apply_operator(tb.e_half, y));
      y = apply_operator(tb.e_half, u);
      y.axpy(0.5 * h, k2);
      const Pair k3 = N(y);
      y = apply_operator(tb.e_full, u);
      y.axpy(h, apply_operator(tb.e_half, k3));
      const Pair k4 = N(y);
      next = apply_operator(tb.e_full, u);
      next.axpy(h / 6.0, apply_operator(tb.e_full, k1));
      next.axpy(h / 3.0, apply_operator(tb.e_half, k2));
      next.axpy(h / 3.0, apply_operator(tb.e_half, k3));
      next.axpy(h / 6.0, k4);
      break;
    }
    case Integrator::ImexBdf2: {
      const Pair n0 = N(u);
      Pair rhs{SpectralField(grid_, 1), SpectralField(grid_, grid_.dim())};
      const bool multistep = prev_ && prev_h_ == h;
      if (multistep) {
        const Pair prev{prev_->a, prev_->v};
        const Pair prev_n = to_pair(*prev_n_);
        rhs.axpy(2.0 / h, u).axpy(-0.5 / h, prev).axpy(2.0, n0).axpy(-1.0, prev_n);
        next = apply_operator(tb.implicit_bdf2, rhs);
      } else {
        rhs.axpy(1.0 / h, u).axpy(1.0, n0);
        next = apply_operator(tb.implicit_euler, rhs);
      }
      prev_ = std::make_unique<CnsState>(CnsState{s.t, u.a, u.v, params_, law_});
      prev_n_ = std::make_unique<CnsRates>(CnsRates{n0.a, n0.v});
      prev_h_ = h;
      break;
    }
  }
  return CnsState{s.t + h, std::move(next.a), std::move(next.v), params_, law_};
}

CnsState cns_step(const CnsState& state, double dt, Integrator integrator) {
  CnsStepper stepper(state.v.grid(), state.params, state.law, integrator);
  return stepper.step(state, dt);
}

Trajectory run_cns(const CnsConfig& config, const SpectralField& a0, const SpectralField& v0) {
  return run_cns(config, a0, v0,
                 make_schedule(config.dt, config.t_end, config.save_every, config.ramp_h0));
}

Trajectory run_cns(const CnsConfig& config, const SpectralField& a0, const SpectralField& v0,
                   const TimeSchedule& schedule) {
  if (!(a0.grid() == config.grid) || !(v0.grid() == config.grid))
    throw std::invalid_argument("initial data on another grid");
  Trajectory traj;
  traj.system = "cns";
  traj.grid = config.grid;
  traj.mu = config.params.mu;
  traj.lambda = config.params.lambda;
  traj.gamma = config.law.gamma;
  CnsStepper stepper(config.grid, config.params, config.law, config.integrator);
  CnsState s{0.0, dealias(a0), dealias(v0), config.params, config.law};
  auto record = [&](const CnsState& st) {
    CnsRates r = cns_rhs(st);
    traj.t.push_back(st.t);
    traj.a.push_back(st.a);
    traj.v.push_back(st.v);
    traj.a_t.push_back(std::move(r.da_dt));
    traj.v_t.push_back(std::move(r.dv_dt));
  };
  record(s);
  for (std::size_t i = 0; i < schedule.steps(); ++i) {
    s = stepper.step(s, schedule.h[i]);
    s.t = schedule.times[i + 1];
    if (schedule.save[i + 1]) record(s);
  }
  return traj;
}

RescaledConfig rescale_config(double mu, double lambda, double t_end, double length) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
  return {1.0, lambda / mu, t_end / mu, length / mu};
}

MonitorReport continuation_monitor(const Trajectory& traj, const DyadicPartition& p,
                                   double ceiling, double rho_floor) {
  MonitorReport r;
  if (traj.empty()) return r;
  const Grid& g = traj.grid;
  const int d = g.dim();
  std::vector<double> grad_sup(traj.size(), 0.0);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<double> frob(g.modes(), 0.0);
    for (int c = 0; c < d; ++c) {
      const SpectralField vc = component_of(traj.v[i], c);
      const PhysicalField gv = to_physical(gradient(vc));
      for (int e = 0; e < d; ++e) {
        auto x = gv.component(e);
        for (std::size_t m = 0; m < x.size(); ++m) frob[m] += x[m] * x[m];
      }
    }
    double mx = 0.0;
    for (double x : frob) mx = std::max(mx, x);
    grad_sup[i] = std::sqrt(mx);
    if (traj.has_density()) {
      r.a_sup_besov = std::max(r.a_sup_besov, besov(p, traj.a[i], 0.5 * d));
      r.rho_inf = std::min(r.rho_inf, 1.0 + min_value(traj.a[i]));
    }
  }
  r.grad_v_integral = trapezoid(traj.t, grad_sup);
  if (r.rho_inf <= rho_floor) {
    r.flagged = true;
    r.reason = "inf rho <= " + std::to_string(rho_floor);
  } else if (!(r.grad_v_integral <= ceiling) || !(r.a_sup_besov <= ceiling)) {
    r.flagged = true;
    r.reason = "norm ceiling exceeded";
  }
  return r;
}

Mat2 etd_linear_step(double kappa, double nu, double h) {
  return matrix_phi(0, scaled(acoustic_block(kappa, nu), h));
}

std::vector<Complex> bdf2_companion_eigenvalues(double kappa, double nu, double h) {
  const double alpha = 1.5 / h;
  const double det = alpha * (alpha + nu * kappa * kappa) + kappa * kappa;
  Eigen::Matrix2d inv;
  inv << (alpha + nu * kappa * kappa) / det, -kappa / det, kappa / det, alpha / det;
  Eigen::Matrix4d c = Eigen::Matrix4d::Zero();
  c.topLeftCorner<2, 2>() = inv * (2.0 / h);
  c.topRightCorner<2, 2>() = inv * (-0.5 / h);
  c.bottomLeftCorner<2, 2>() = Eigen::Matrix2d::Identity();
  Eigen::EigenSolver<Eigen::Matrix4d> es(c);
  std::vector<Complex> out;
  for (int i = 0; i < 4; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

}  // namespace criticalflow
