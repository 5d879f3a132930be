#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "criticalflow/cns_solver.hpp"
#include "criticalflow/config.hpp"
#include "criticalflow/experiments.hpp"
#include "criticalflow/functionals.hpp"
#include "criticalflow/helmholtz.hpp"
#include "criticalflow/ins_solver.hpp"
#include "criticalflow/littlewood_paley.hpp"
#include "criticalflow/snapshot_io.hpp"

namespace fs = std::filesystem;
using namespace criticalflow;

namespace {

int solve(const std::string& system, const fs::path& config_path, fs::path out) {
  const Config cfg = Config::load(config_path);
  const int dim = static_cast<int>(cfg.get_int("grid.dim", 2));
  const int n = static_cast<int>(cfg.get_int("grid.n", 64));
  const double length = cfg.get_double("grid.length", 2.0 * std::numbers::pi);
  const double mu = cfg.get_double("mu", 1.0);
  const double lambda = cfg.get_double("lambda", 0.0);
  const double dt = cfg.get_double("dt", 1e-3);
  const double t_end = cfg.get_double("t_end", 1.0);
  const int save_every = static_cast<int>(cfg.get_int("save_every", 10));
  const Integrator integ = parse_integrator(cfg.get("integrator", "etd-rk4"));
  const double h0 = cfg.get_double("ramp_h0", 0.0);

  InitSpec spec;
  spec.kind = cfg.get("init.kind", spec.kind);
  spec.v_amplitude = cfg.get_double("init.v_amplitude", spec.v_amplitude);
  spec.q_amplitude = cfg.get_double("init.q_amplitude", spec.q_amplitude);
  spec.a_amplitude = cfg.get_double("init.a_amplitude", spec.a_amplitude);
  spec.a_over_nu = cfg.get_bool("init.a_over_nu", spec.a_over_nu);
  spec.j_lo = static_cast<int>(cfg.get_int("init.j_lo", spec.j_lo));
  spec.j_hi = static_cast<int>(cfg.get_int("init.j_hi", spec.j_hi));
  const auto seed = static_cast<std::uint64_t>(cfg.get_int("init.seed", 1));

  const Grid grid = make_grid(dim, n, length);
  const DyadicPartition part = build_partition(grid);
  const ViscosityParams params{mu, lambda};
  validate(params);
  const InitialData data = generate_initial_data(spec, part, seed, params.nu());
  if (out.empty()) out = cfg.get("output_dir", "run_" + system);

  const auto start = std::chrono::steady_clock::now();
  Trajectory traj;
  if (system == "ins") {
    InsConfig c{grid, mu, dt, t_end, save_every, integ, h0};
    traj = run_ins(c, project_P(data.v0));
  } else {
    CnsConfig c;
    c.grid = grid;
    c.params = params;
    c.law.gamma = cfg.get_double("gamma", 2.0);
    c.dt = dt;
    c.t_end = t_end;
    c.save_every = save_every;
    c.integrator = integ;
    c.ramp_h0 = h0;
    traj = run_cns(c, data.a0, data.v0);
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_trajectory(out, traj, cfg.values(), wall);
  std::printf("%zu levels written to %s (%.2f s)\n", traj.size(), out.string().c_str(), wall);
  return 0;
}

int analyze_snapshot(const fs::path& file, std::optional<double> s_opt, int grad_order,
                     const fs::path& out) {
  const Snapshot snap = read_snapshot(file);
  const DyadicPartition part = build_partition(snap.field.grid());
  const double s = s_opt.value_or(0.5 * snap.field.grid().dim() - 1.0);
  const std::vector<double> blocks = block_l2(part, snap.field, grad_order);
  std::ostringstream csv;
  csv.precision(17);
  csv << "j,block_norm,weight_s\n";
  double total = 0.0;
  for (int j = part.j_min; j <= part.j_max; ++j) {
    const double b = blocks[static_cast<std::size_t>(j - part.j_min)];
    const double w = std::pow(2.0, j * s);
    total += w * b;
    csv << j << ',' << b << ',' << w << '\n';
  }
  csv << "besov_norm," << s << ',' << total << '\n';
  if (out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream(out) << csv.str();
  }
  return 0;
}

int analyze_functionals(const fs::path& cns_dir, const fs::path& ins_dir, fs::path out, double C) {
  const Trajectory cns = read_trajectory(cns_dir);
  const Trajectory ins = read_trajectory(ins_dir);
  if (cns.system != "cns" || ins.system != "ins")
    throw std::invalid_argument("expected a cns directory followed by an ins directory");
  const DyadicPartition part = build_partition(cns.grid);
  const double nu = cns.nu();
  const FunctionalReport rep = compute_XYZWV(perturbation_fields(cns, ins), part, nu);
  if (out.empty()) out = cns_dir;
  fs::create_directories(out);

  std::ofstream csv(out / "functionals.csv");
  csv.precision(17);
  csv << "T,Xd,Yd,Zd,Wd,Vd,E\n";
  for (std::size_t i = 0; i < rep.t.size(); ++i)
    csv << rep.t[i] << ',' << rep.X[i] << ',' << rep.Y[i] << ',' << rep.Z[i] << ',' << rep.W[i]
        << ',' << rep.V[i] << ',' << rep.E[i] << '\n';

  const double M = compute_M(ins, part);
  const InitialNorms init = initial_norms(cns.a.front(), cns.v.front(), part);
  const SmallnessCheck small = check_smallness(init, M, cns.mu, nu, C);
  const BoundCheck bound = check_theorem_bound(rep, init, M, cns.mu, nu, C);
  const MonitorReport mon = continuation_monitor(cns, part);
  nlohmann::json j;
  j["mu"] = cns.mu;
  j["nu"] = nu;
  j["C"] = C;
  j["M"] = M;
  j["initial"] = {{"a0_low", init.a0_low}, {"a0_high", init.a0_high}, {"Qv0", init.Qv0}};
  j["smallness"] = {{"lhs", small.lhs}, {"rhs", small.rhs}, {"ratio", small.ratio},
                    {"holds", small.lhs <= small.rhs}, {"largest_C", small.largest_C}};
  j["bound"] = {{"lhs", bound.lhs}, {"rhs", bound.rhs}, {"holds", bound.lhs <= bound.rhs},
                {"empirical_C", bound.empirical_C}};
  j["monitor"] = {{"grad_v_integral", mon.grad_v_integral}, {"a_sup_besov", mon.a_sup_besov},
                  {"rho_inf", mon.rho_inf}, {"flagged", mon.flagged}, {"reason", mon.reason}};
  std::ofstream(out / "conditions.json") << j.dump(2) << '\n';
  std::printf("E(T) = %.6e, empirical C = %.6g\n", rep.E_final(), bound.empirical_C);
  return 0;
}

int sweep(const fs::path& config_path, const fs::path& out) {
  const Config cfg = Config::load(config_path);
  ExperimentConfig c = experiment_config_from(cfg);
  if (!cfg.has("threads"))
    c.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("CRITICALFLOW_THREADS")) {
    const int cap = std::atoi(env);
    if (cap < 1) throw std::invalid_argument("CRITICALFLOW_THREADS must be a positive integer");
    c.threads = std::min(c.threads, cap);
  }
  if (!out.empty()) c.output_dir = out;
  const SweepResult r = run_nu_sweep(c);
  for (const auto& row : r.rows)
    std::printf("nu=%-8g seed=%-4llu E=%.6e %s\n", row.nu, static_cast<unsigned long long>(row.seed),
                row.E, row.flag.c_str());
  if (r.fit)
    std::printf("slope %.4f [%.4f, %.4f] (%s)\n", r.fit->slope, r.fit->ci_low, r.fit->ci_high,
                r.fit->status.c_str());
  return r.all_completed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low Mach / large volume viscosity limit experiments"};
  app.set_version_flag("--version", build_version());
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "integrate one system and write a trajectory directory");
  std::string system;
  fs::path solve_config, solve_out;
  solve_cmd->add_option("--system", system, "ins or cns")->required()->check(CLI::IsMember({"ins", "cns"}));
  solve_cmd->add_option("--config", solve_config)->required()->check(CLI::ExistingFile);
  solve_cmd->add_option("--out", solve_out, "trajectory directory");

  auto* analyze_cmd = app.add_subcommand("analyze", "Besov blocks of a snapshot, or the functionals of a run pair");
  std::vector<fs::path> inputs;
  bool functionals = false;
  std::optional<double> s_opt;
  int grad_order = 0;
  double C = 1.0;
  fs::path analyze_out;
  analyze_cmd->add_option("inputs", inputs, "snapshot file, or cns and ins directories")->required();
  analyze_cmd->add_flag("--functionals", functionals);
  analyze_cmd->add_option("--s", s_opt, "regularity index (default d/2 - 1)");
  analyze_cmd->add_option("--grad-order", grad_order)->check(CLI::Range(0, 4));
  analyze_cmd->add_option("--C", C, "constant used in the condition checks");
  analyze_cmd->add_option("--out", analyze_out, "output file (snapshot) or directory (functionals)");

  auto* sweep_cmd = app.add_subcommand("sweep", "nu sweep with rate fit");
  fs::path sweep_config, sweep_out;
  sweep_cmd->add_option("--config", sweep_config)->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--out", sweep_out, "overrides output_dir");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*solve_cmd) return solve(system, solve_config, solve_out);
    if (*analyze_cmd) {
      if (functionals) {
        if (inputs.size() != 2) throw std::invalid_argument("--functionals takes <cns_dir> <ins_dir>");
        return analyze_functionals(inputs[0], inputs[1], analyze_out, C);
      }
      if (inputs.size() != 1) throw std::invalid_argument("analyze takes one snapshot file");
      return analyze_snapshot(inputs[0], s_opt, grad_order, analyze_out);
    }
    if (*sweep_cmd) return sweep(sweep_config, sweep_out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "criticalflow: %s\n", e.what());
    return 2;
  }
  return 0;
}
