#include "criticalflow/experiments.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "criticalflow/cns_solver.hpp"
#include "criticalflow/functionals.hpp"
#include "criticalflow/helmholtz.hpp"
#include "criticalflow/ins_solver.hpp"
#include "criticalflow/spectral.hpp"

namespace criticalflow {

namespace {

constexpr const char* kSweepHeader = "nu,seed,E,Xd,Yd,Zd,Wd,Vd,flag,wall_s";
constexpr const char* kDiagHeader =
    "nu,seed,M,bound_lhs,empirical_C,smallness_ratio,smallness_largest_C,grad_v_integral,"
    "a_sup_besov,rho_inf,completed";

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string clean_flag(std::string f) {
  for (char& c : f)
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  return f;
}

std::string sweep_line(const SweepRow& r) {
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", r.wall_s);
  return num(r.nu) + "," + std::to_string(r.seed) + "," + num(r.E) + "," + num(r.Xd) + "," +
         num(r.Yd) + "," + num(r.Zd) + "," + num(r.Wd) + "," + num(r.Vd) + "," +
         clean_flag(r.flag) + "," + wall;
}

std::string diag_line(const SweepRow& r) {
  return num(r.nu) + "," + std::to_string(r.seed) + "," + num(r.M) + "," + num(r.bound_lhs) + "," +
         num(r.empirical_C) + "," + num(r.smallness_ratio) + "," + num(r.smallness_largest_C) +
         "," + num(r.grad_v_integral) + "," + num(r.a_sup_besov) + "," + num(r.rho_inf) + "," +
         (r.completed ? "1" : "0");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double rescale_to(SpectralField& f, double measured, double target, const char* what) {
  if (target == 0.0) {
    f *= 0.0;
    return 0.0;
  }
  if (!(measured > 0.0))
    throw std::invalid_argument(std::string("cannot reach requested norm of ") + what +
                                ": the band is empty");
  f *= target / measured;
  return target;
}

// Two-sided 95% Student t quantiles for 1..30 degrees of freedom.
double t_quantile(int df) {
  static const double q[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                             2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086,
                             2.080,  2.074, 2.069, 2.064, 2.060, 2.056, 2.052, 2.048, 2.045, 2.042};
  if (df < 1) return 0.0;
  return df <= 30 ? q[df - 1] : 1.96;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string plot_script(const SweepResult& result) {
  std::ostringstream s;
  s << "# log-log plot of the sweep error against nu\n"
    << "set terminal png size 900,650\n"
    << "set output 'sweep.png'\n"
    << "set datafile separator ','\n"
    << "set logscale xy\n"
    << "set format x '10^{%L}'\n"
    << "set xlabel 'nu'\n"
    << "set ylabel 'E(nu)'\n"
    << "set key top right\n"
    << "set grid\n";
  double anchor = 1.0;
  int used = 0;
  double acc = 0.0;
  for (const auto& r : result.rows)
    if (r.completed && r.E > 0.0 && std::isfinite(r.E)) {
      acc += std::log(r.E) + 0.5 * std::log(r.nu);
      ++used;
    }
  if (used > 0) anchor = std::exp(acc / used);
  s << "ref(x) = " << num(anchor) << " * x**(-0.5)\n";
  std::string fit_term;
  if (result.fit && std::isfinite(result.fit->slope)) {
    s << "fitted(x) = exp(" << num(result.fit->intercept) << ") * x**(" << num(result.fit->slope)
      << ")\n";
    fit_term = ", fitted(x) with lines lw 2 dt 1 title sprintf('fit, slope %.3f', " +
               num(result.fit->slope) + ")";
  }
  s << "plot 'sweep.csv' every ::1 using 1:3 with points pt 7 ps 1.3 title 'E per seed', \\\n"
    << "     ref(x) with lines lw 2 dt 2 title 'slope -1/2'" << fit_term << "\n";
  return s.str();
}

}  // namespace

SpectralField taylor_green(const Grid& grid, double amp) {
  PhysicalField f(grid, grid.dim());
  const double w = grid.wavenumber_unit();
  auto u = f.component(0);
  auto v = f.component(1);
  for (std::size_t i = 0; i < grid.modes(); ++i) {
    const double x = w * grid.coordinate(i, 0);
    const double y = w * grid.coordinate(i, 1);
    u[i] = amp * std::sin(x) * std::cos(y);
    v[i] = -amp * std::cos(x) * std::sin(y);
  }
  return dealias(to_spectral(f));
}

SpectralField random_band(const DyadicPartition& p, int components, int j_lo, int j_hi,
                          std::uint64_t seed, std::uint64_t stream) {
  if (j_lo > j_hi || !p.contains(j_lo) || !p.contains(j_hi))
    throw std::invalid_argument("band [" + std::to_string(j_lo) + ", " + std::to_string(j_hi) +
                                "] outside the block range");
  const Grid& g = p.grid;
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(stream), 0x5eedu};
  std::mt19937_64 rng(sq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> weight(g.modes(), 0.0);
  for (int j = j_lo; j <= j_hi; ++j) {
    const auto& w = p.weight(j);
    for (std::size_t i = 0; i < weight.size(); ++i) weight[i] += w[i];
  }
  auto keep = g.retained();
  SpectralField raw(g, components);
  for (int c = 0; c < components; ++c) {
    auto u = raw.component(c);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      u[i] = keep[i] ? weight[i] * Complex(re, im) : Complex{};
    }
  }
  SpectralField out(g, components);
  const int d = g.dim();
  int neg[3];
  for (int c = 0; c < components; ++c) {
    auto u = raw.component(c);
    auto o = out.component(c);
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (int a = 0; a < d; ++a) neg[a] = -g.xi(a)[i];
      const std::size_t j = g.mode_index(std::span<const int>(neg, static_cast<std::size_t>(d)));
      o[i] = 0.5 * (u[i] + std::conj(u[j]));
    }
  }
  return out;
}

InitialData generate_initial_data(const InitSpec& spec, const DyadicPartition& p,
                                  std::uint64_t seed, double nu) {
  const Grid& g = p.grid;
  const int d = g.dim();
  const double s = 0.5 * d - 1.0;
  InitialData data{SpectralField(g, 1), SpectralField(g, d)};
  if (spec.kind == "taylor-green") {
    data.v0 = taylor_green(g, spec.v_amplitude);
  } else if (spec.kind == "random-band" || spec.kind == "random-band-plus-density") {
    SpectralField v = random_band(p, d, spec.j_lo, spec.j_hi, seed, 1);
    rescale_to(v, besov(p, v, s), spec.v_amplitude, "v0");
    data.v0 = std::move(v);
  } else {
    throw std::invalid_argument("unknown initial data kind '" + spec.kind + "'");
  }
  if (spec.q_amplitude != 0.0) {
    SpectralField q = project_Q(random_band(p, d, spec.j_lo, spec.j_hi, seed, 2));
    rescale_to(q, besov(p, q, s), spec.q_amplitude, "Qv0");
    data.v0 += q;
  }
  if (spec.kind != "random-band" && spec.a_amplitude != 0.0) {
    if (spec.a_over_nu && !(nu > 0.0)) throw std::invalid_argument("nu must be positive");
    const double target = spec.a_over_nu ? spec.a_amplitude / nu : spec.a_amplitude;
    SpectralField a = random_band(p, 1, spec.j_lo, spec.j_hi, seed, 3);
    rescale_to(a, besov(p, a, 0.5 * d), target, "a0");
    if (!(1.0 + min_value(a) > 0.0)) throw std::invalid_argument("initial density has vacuum");
    data.a0 = std::move(a);
  }
  return data;
}

void validate(const ExperimentConfig& c) {
  make_grid(c.dim, c.n, c.length);
  if (!(c.mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(c.gamma >= 1.0)) throw std::invalid_argument("gamma must be >= 1");
  if (!(c.dt > 0.0) || !(c.t_end > 0.0)) throw std::invalid_argument("dt and t_end must be positive");
  if (c.save_every < 1) throw std::invalid_argument("save_every must be >= 1");
  if (c.nu_values.empty()) throw std::invalid_argument("nu_values is empty");
  for (std::size_t i = 0; i < c.nu_values.size(); ++i) {
    if (c.nu_values[i] < c.mu) throw std::invalid_argument("every nu must be >= mu");
    if (i > 0 && !(c.nu_values[i] > c.nu_values[i - 1]))
      throw std::invalid_argument("nu_values must be strictly increasing");
  }
  if (c.seeds.empty()) throw std::invalid_argument("seeds is empty");
  if (c.threads < 1) throw std::invalid_argument("threads must be >= 1");
}

ExperimentConfig experiment_config_from(const Config& cfg) {
  ExperimentConfig c;
  c.dim = static_cast<int>(cfg.get_int("grid.dim", c.dim));
  c.n = static_cast<int>(cfg.get_int("grid.n", c.n));
  c.length = cfg.get_double("grid.length", c.length);
  c.mu = cfg.get_double("mu", c.mu);
  c.gamma = cfg.get_double("gamma", c.gamma);
  c.dt = cfg.get_double("dt", c.dt);
  c.t_end = cfg.get_double("t_end", c.t_end);
  c.save_every = static_cast<int>(cfg.get_int("save_every", c.save_every));
  c.integrator = parse_integrator(cfg.get("integrator", to_string(c.integrator)));
  c.ramp_h0 = cfg.get_double("ramp_h0", c.ramp_h0);
  c.nu_values = cfg.get_doubles("nu_values");
  for (double s : cfg.get_doubles("seeds")) c.seeds.push_back(static_cast<std::uint64_t>(s));
  c.init.kind = cfg.get("init.kind", c.init.kind);
  c.init.v_amplitude = cfg.get_double("init.v_amplitude", c.init.v_amplitude);
  c.init.q_amplitude = cfg.get_double("init.q_amplitude", c.init.q_amplitude);
  c.init.a_amplitude = cfg.get_double("init.a_amplitude", c.init.a_amplitude);
  c.init.a_over_nu = cfg.get_bool("init.a_over_nu", c.init.a_over_nu);
  c.init.j_lo = static_cast<int>(cfg.get_int("init.j_lo", c.init.j_lo));
  c.init.j_hi = static_cast<int>(cfg.get_int("init.j_hi", c.init.j_hi));
  c.output_dir = cfg.get("output_dir", c.output_dir.string());
  c.monitor_ceiling = cfg.get_double("monitor_ceiling", c.monitor_ceiling);
  c.C = cfg.get_double("C", c.C);
  c.threads = static_cast<int>(cfg.get_int("threads", c.threads));
  return c;
}

std::vector<SweepRow> read_sweep_rows(const std::filesystem::path& dir) {
  std::vector<SweepRow> rows;
  std::ifstream in(dir / "sweep.csv");
  if (!in) return rows;
  std::string line;
  std::getline(in, line);
  if (line != kSweepHeader) throw std::runtime_error("unexpected sweep.csv header: " + line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 10) continue;  // torn final line from an interrupted run
    SweepRow r;
    r.nu = std::stod(f[0]);
    r.seed = std::stoull(f[1]);
    r.E = std::stod(f[2]);
    r.Xd = std::stod(f[3]);
    r.Yd = std::stod(f[4]);
    r.Zd = std::stod(f[5]);
    r.Wd = std::stod(f[6]);
    r.Vd = std::stod(f[7]);
    r.flag = f[8];
    r.wall_s = std::stod(f[9]);
    r.completed = r.flag.rfind("aborted", 0) != 0;
    rows.push_back(r);
  }
  std::ifstream din(dir / "diagnostics.csv");
  if (din) {
    std::getline(din, line);
    while (std::getline(din, line)) {
      const auto f = split_csv(line);
      if (f.size() != 11) continue;
      const double nu = std::stod(f[0]);
      const auto seed = std::stoull(f[1]);
      for (auto& r : rows) {
        if (r.nu != nu || r.seed != seed) continue;
        r.M = std::stod(f[2]);
        r.bound_lhs = std::stod(f[3]);
        r.empirical_C = std::stod(f[4]);
        r.smallness_ratio = std::stod(f[5]);
        r.smallness_largest_C = std::stod(f[6]);
        r.grad_v_integral = std::stod(f[7]);
        r.a_sup_besov = std::stod(f[8]);
        r.rho_inf = std::stod(f[9]);
        r.completed = f[10] == "1";
      }
    }
  }
  return rows;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("need two distinct abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : sxy * sxy / (sxx * syy);
  return f;
}

std::optional<FitResult> fit_rate(const SweepResult& result) {
  std::set<double> all_nu;
  for (const auto& r : result.rows) all_nu.insert(r.nu);
  if (all_nu.size() < 2) return std::nullopt;
  std::map<std::uint64_t, std::pair<std::vector<double>, std::vector<double>>> by_seed;
  for (const auto& r : result.rows) {
    if (!r.completed || r.flag != "ok" || !(r.E > kNoiseFloor) || !std::isfinite(r.E)) continue;
    by_seed[r.seed].first.push_back(std::log(r.nu));
    by_seed[r.seed].second.push_back(std::log(r.E));
  }
  FitResult fit;
  double si = 0.0, sr = 0.0;
  for (const auto& [seed, xy] : by_seed) {
    if (std::set<double>(xy.first.begin(), xy.first.end()).size() < 2) continue;
    const LineFit lf = fit_line(xy.first, xy.second);
    fit.seed_slopes.push_back(lf.slope);
    si += lf.intercept;
    sr += lf.r2;
  }
  fit.seeds_used = static_cast<int>(fit.seed_slopes.size());
  if (fit.seeds_used == 0) {
    fit.status = "degenerate: E below noise floor";
    fit.slope = fit.intercept = fit.r2 = fit.ci_low = fit.ci_high = std::nan("");
    return fit;
  }
  double mean = 0.0;
  for (double s : fit.seed_slopes) mean += s;
  mean /= fit.seeds_used;
  fit.slope = mean;
  fit.intercept = si / fit.seeds_used;
  fit.r2 = sr / fit.seeds_used;
  if (fit.seeds_used > 1) {
    double var = 0.0;
    for (double s : fit.seed_slopes) var += (s - mean) * (s - mean);
    var /= (fit.seeds_used - 1);
    const double half = t_quantile(fit.seeds_used - 1) * std::sqrt(var / fit.seeds_used);
    fit.ci_low = mean - half;
    fit.ci_high = mean + half;
  } else {
    fit.ci_low = fit.ci_high = mean;
  }
  return fit;
}

void emit_outputs(const SweepResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  std::string csv = std::string(kSweepHeader) + "\n";
  std::string diag = std::string(kDiagHeader) + "\n";
  for (const auto& r : result.rows) {
    csv += sweep_line(r) + "\n";
    diag += diag_line(r) + "\n";
  }
  write_text(dir / "sweep.csv", csv);
  write_text(dir / "diagnostics.csv", diag);
  std::filesystem::remove(dir / "fit.json", ec);
  if (result.fit) {
    const auto& f = *result.fit;
    auto finite = [](double x) -> nlohmann::json {
      return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
    };
    nlohmann::json j;
    j["status"] = f.status;
    j["slope"] = finite(f.slope);
    j["intercept"] = finite(f.intercept);
    j["r2"] = finite(f.r2);
    j["ci95"] = {finite(f.ci_low), finite(f.ci_high)};
    j["seeds_used"] = f.seeds_used;
    j["seed_slopes"] = f.seed_slopes;
    j["noise_floor"] = kNoiseFloor;
    j["expected_slope"] = -0.5;
    write_text(dir / "fit.json", j.dump(2) + "\n");
  }
  write_text(dir / "plot_sweep.gp", plot_script(result));
}

SweepResult run_nu_sweep(const ExperimentConfig& input) {
  validate(input);
  ExperimentConfig config = input;
  if (config.mu != 1.0) {
    const auto r = rescale_config(config.mu, 0.0, config.t_end, config.length);
    config.t_end = r.t_end;
    config.length = r.length;
    config.dt /= config.mu;
    for (auto& nu : config.nu_values) nu /= config.mu;
    config.mu = 1.0;
  }
  const Grid grid = make_grid(config.dim, config.n, config.length);
  const DyadicPartition part = build_partition(grid);
  if (!part.contains(config.init.j_lo) || !part.contains(config.init.j_hi))
    throw std::invalid_argument("initial-data band outside the block range");

  double h0 = config.ramp_h0;
  if (h0 < 0.0) {
    const double kmax = std::min(std::ldexp(8.0 / 3.0, config.init.j_hi),
                                 grid.wavenumber_unit() * config.n / 3.0 * std::sqrt(config.dim));
    h0 = 0.1 / (config.nu_values.back() * kmax * kmax);
  }
  const TimeSchedule schedule = make_schedule(config.dt, config.t_end, config.save_every, h0);

  std::filesystem::create_directories(input.output_dir);
  std::vector<SweepRow> done = read_sweep_rows(input.output_dir);
  std::erase_if(done, [](const SweepRow& r) { return !r.completed; });
  auto already = [&](double nu, std::uint64_t seed) {
    return std::ranges::any_of(done, [&](const SweepRow& r) { return r.nu == nu && r.seed == seed; });
  };

  // Rewrite the table with the rows being kept, then append as runs finish.
  {
    SweepResult kept;
    kept.rows = done;
    std::string csv = std::string(kSweepHeader) + "\n";
    std::string diag = std::string(kDiagHeader) + "\n";
    for (const auto& r : done) {
      csv += sweep_line(r) + "\n";
      diag += diag_line(r) + "\n";
    }
    write_text(input.output_dir / "sweep.csv", csv);
    write_text(input.output_dir / "diagnostics.csv", diag);
  }

  struct Job {
    double nu;       // rescaled
    double nu_out;   // as configured
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (auto seed : config.seeds)
    for (std::size_t k = 0; k < config.nu_values.size(); ++k)
      if (!already(input.nu_values[k], seed))
        jobs.push_back({config.nu_values[k], input.nu_values[k], seed});

  std::map<std::uint64_t, std::shared_future<std::shared_ptr<const Trajectory>>> refs;
  for (auto seed : config.seeds) {
    refs[seed] = std::async(std::launch::deferred, [&, seed] {
                   const InitialData data = generate_initial_data(config.init, part, seed, 1.0);
                   InsConfig ic;
                   ic.grid = grid;
                   ic.mu = config.mu;
                   ic.dt = config.dt;
                   ic.t_end = config.t_end;
                   ic.save_every = config.save_every;
                   ic.integrator = config.integrator;
                   return std::shared_ptr<const Trajectory>(std::make_shared<Trajectory>(
                       run_ins(ic, project_P(data.v0), schedule)));
                 }).share();
  }

  std::mutex out_mutex;
  std::vector<SweepRow> fresh;
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(config.threads, static_cast<int>(jobs.size())));

  auto run_job = [&](const Job& job) {
    SweepRow row;
    row.nu = job.nu_out;
    row.seed = job.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      auto future = refs.at(job.seed);
      const auto ref = future.get();
      const InitialData data = generate_initial_data(config.init, part, job.seed, job.nu);
      CnsConfig cc;
      cc.grid = grid;
      cc.params = {config.mu, job.nu - 2.0 * config.mu};
      cc.law.gamma = config.gamma;
      cc.dt = config.dt;
      cc.t_end = config.t_end;
      cc.save_every = config.save_every;
      cc.integrator = config.integrator;
      const Trajectory cns = run_cns(cc, data.a0, data.v0, schedule);
      const PerturbationTrajectory pert = perturbation_fields(cns, *ref);
      const FunctionalReport rep = compute_XYZWV(pert, part, job.nu);
      const MonitorReport mon = continuation_monitor(cns, part, config.monitor_ceiling);
      const double M = compute_M(*ref, part);
      const InitialNorms init = initial_norms(data.a0, data.v0, part);
      const SmallnessCheck small = check_smallness(init, M, config.mu, job.nu, config.C);
      const BoundCheck bound = check_theorem_bound(rep, init, M, config.mu, job.nu, config.C);
      row.E = rep.E_final();
      row.Xd = rep.X_final();
      row.Yd = rep.Y_final();
      row.Zd = rep.Z_final();
      row.Wd = rep.W_final();
      row.Vd = rep.V_final();
      row.flag = mon.flagged ? mon.reason : "ok";
      row.M = M;
      row.bound_lhs = bound.lhs;
      row.empirical_C = bound.empirical_C;
      row.smallness_ratio = small.ratio;
      row.smallness_largest_C = small.largest_C;
      row.grad_v_integral = mon.grad_v_integral;
      row.a_sup_besov = mon.a_sup_besov;
      row.rho_inf = mon.rho_inf;
    } catch (const CflError& e) {
      row.flag = std::string("aborted: cfl ") + e.what();
      row.completed = false;
    } catch (const VacuumError& e) {
      row.flag = std::string("aborted: vacuum ") + e.what();
      row.completed = false;
    } catch (const std::exception& e) {
      row.flag = std::string("aborted: ") + e.what();
      row.completed = false;
    }
    if (!row.completed) row.E = row.Xd = row.Yd = row.Zd = row.Wd = row.Vd = std::nan("");
    row.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::lock_guard lock(out_mutex);
    std::ofstream(input.output_dir / "sweep.csv", std::ios::app) << sweep_line(row) << "\n";
    std::ofstream(input.output_dir / "diagnostics.csv", std::ios::app) << diag_line(row) << "\n";
    fresh.push_back(row);
  };

  auto worker = [&] {
    if (workers > 1) omp_set_num_threads(1);
    for (std::size_t i = next++; i < jobs.size(); i = next++) run_job(jobs[i]);
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  SweepResult result;
  result.rows = done;
  result.rows.insert(result.rows.end(), fresh.begin(), fresh.end());
  std::ranges::sort(result.rows, [](const SweepRow& a, const SweepRow& b) {
    return a.seed != b.seed ? a.seed < b.seed : a.nu < b.nu;
  });
  result.all_completed = std::ranges::all_of(result.rows, [](const SweepRow& r) { return r.completed; });
  result.fit = fit_rate(result);
  emit_outputs(result, input.output_dir);
  return result;
}

}  // namespace criticalflow
