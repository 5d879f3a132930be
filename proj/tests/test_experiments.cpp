#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "criticalflow/experiments.hpp"
#include "criticalflow/helmholtz.hpp"
#include "criticalflow/spectral.hpp"

using namespace criticalflow;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("criticalflow_test_" + name);
  fs::remove_all(d);
  return d;
}

SweepResult synthetic(const std::vector<double>& nus, auto&& E, int seeds = 1) {
  SweepResult r;
  for (int s = 1; s <= seeds; ++s)
    for (double nu : nus) {
      SweepRow row;
      row.nu = nu;
      row.seed = static_cast<std::uint64_t>(s);
      row.E = E(nu, s);
      r.rows.push_back(row);
    }
  return r;
}

ExperimentConfig small_sweep(const fs::path& out) {
  ExperimentConfig c;
  c.n = 16;
  c.dt = 1e-2;
  c.t_end = 0.1;
  c.save_every = 2;
  c.nu_values = {4.0, 16.0};
  c.seeds = {1, 2};
  c.init.kind = "taylor-green";
  c.init.q_amplitude = 0.2;
  c.init.a_amplitude = 0.1;
  c.init.a_over_nu = true;
  c.output_dir = out;
  return c;
}

}  // namespace

TEST_CASE("initial data") {
  const Grid g = make_grid(2, 32);
  const auto p = build_partition(g);
  InitSpec spec;
  spec.kind = "random-band-plus-density";
  spec.v_amplitude = 1.0;
  spec.a_amplitude = 0.3;
  spec.j_lo = 0;
  spec.j_hi = 2;
  const auto d1 = generate_initial_data(spec, p, 7);
  const auto d2 = generate_initial_data(spec, p, 7);
  CHECK(max_coeff_diff(d1.v0, d2.v0) == 0.0);
  CHECK(max_coeff_diff(d1.a0, d2.a0) == 0.0);
  CHECK(besov(p, d1.v0, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(besov(p, d1.a0, 1.0) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(d1.a0.mean() == 0.0);
  CHECK(max_abs(project_Q(d1.v0)) > 0.0);  // not projected
  CHECK(max_abs(project_P(d1.v0)) > 0.0);
  CHECK(max_coeff_diff(generate_initial_data(spec, p, 8).v0, d1.v0) > 0.0);
  CHECK(conjugate_symmetry_defect(d1.v0) < 1e-16);

  spec.a_over_nu = true;
  CHECK(besov(p, generate_initial_data(spec, p, 7, 10.0).a0, 1.0) == doctest::Approx(0.03).epsilon(1e-10));

  spec.v_amplitude = 0.0;
  spec.a_amplitude = 0.0;
  const auto z = generate_initial_data(spec, p, 7);
  CHECK(max_abs(z.v0) == 0.0);
  CHECK(max_abs(z.a0) == 0.0);

  InitSpec tg;
  tg.q_amplitude = 0.3;
  const auto t = generate_initial_data(tg, p, 1);
  CHECK(besov(p, project_Q(t.v0), 0.0) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(max_abs(project_P(t.v0) - taylor_green(g)) < 1e-14);

  InitSpec bad;
  bad.kind = "vortex-sheet";
  CHECK_THROWS_AS(generate_initial_data(bad, p, 1), std::invalid_argument);
  InitSpec vac;
  vac.a_amplitude = 50.0;
  CHECK_THROWS_AS(generate_initial_data(vac, p, 1), std::invalid_argument);
}

TEST_CASE("line and rate fits") {
  const auto f = fit_line({0, 1, 2}, {1, 3, 5});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK_THROWS(fit_line({1, 1}, {0, 1}));

  const std::vector<double> nus = {10, 100, 1000, 10000};
  auto half = fit_rate(synthetic(nus, [](double nu, int) { return std::pow(nu, -0.5); }));
  REQUIRE(half);
  CHECK(half->slope == doctest::Approx(-0.5).epsilon(1e-12));
  auto one = fit_rate(synthetic(nus, [](double nu, int) { return 3.0 / nu; }, 3));
  REQUIRE(one);
  CHECK(one->slope == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(one->intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(one->seeds_used == 3);
  CHECK(one->ci_low == doctest::Approx(-1.0));

  auto noisy = fit_rate(synthetic(nus, [](double nu, int s) { return std::pow(nu, -0.4 - 0.1 * s); }, 3));
  CHECK(noisy->slope == doctest::Approx(-0.6));
  CHECK(noisy->ci_low < -0.6);
  CHECK(noisy->ci_high > -0.6);

  CHECK_FALSE(fit_rate(synthetic({10}, [](double, int) { return 1.0; })));
  auto tiny = fit_rate(synthetic(nus, [](double, int) { return 1e-12; }));
  REQUIRE(tiny);
  CHECK(tiny->status == "degenerate: E below noise floor");

  auto flagged = synthetic(nus, [](double nu, int) { return 1.0 / nu; });
  flagged.rows[0].E = 100.0;
  flagged.rows[0].flag = "norm ceiling exceeded";
  CHECK(fit_rate(flagged)->slope == doctest::Approx(-1.0));
}

TEST_CASE("emitted files") {
  const auto dir = fresh_dir("emit");
  emit_outputs(SweepResult{}, dir);
  CHECK(slurp(dir / "sweep.csv") == "nu,seed,E,Xd,Yd,Zd,Wd,Vd,flag,wall_s\n");
  CHECK_FALSE(fs::exists(dir / "fit.json"));
  CHECK(fs::exists(dir / "plot_sweep.gp"));

  auto one = synthetic({10}, [](double, int) { return 0.5; });
  one.fit = fit_rate(one);
  emit_outputs(one, dir);
  std::istringstream lines(slurp(dir / "sweep.csv"));
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 2);
  CHECK_FALSE(fs::exists(dir / "fit.json"));

  auto many = synthetic({10, 100, 1000}, [](double nu, int) { return 2.0 / std::sqrt(nu); });
  many.fit = fit_rate(many);
  emit_outputs(many, dir);
  const auto j = nlohmann::json::parse(slurp(dir / "fit.json"));
  CHECK(j["slope"].get<double>() == doctest::Approx(-0.5));
  CHECK(j["status"] == "ok");
  const std::string gp = slurp(dir / "plot_sweep.gp");
  CHECK(gp.find("set logscale xy") != std::string::npos);
  CHECK(gp.find("sweep.csv") != std::string::npos);
  const auto rows = read_sweep_rows(dir);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].E == doctest::Approx(2.0 / 10.0));
  fs::remove_all(dir);
}

TEST_CASE("configuration") {
  const auto cfg = Config::parse(R"(
    mu = 1
    nu_values = [10, 100]
    seeds = 1, 2
    [grid]
    n = 32
    [init]
    kind = "random-band"
    j_hi = 2
  )");
  const auto c = experiment_config_from(cfg);
  CHECK(c.n == 32);
  CHECK(c.nu_values == std::vector<double>{10, 100});
  CHECK(c.seeds.size() == 2);
  CHECK(c.init.kind == "random-band");
  CHECK(c.init.j_hi == 2);
  CHECK_NOTHROW(validate(c));
  auto bad = c;
  bad.nu_values = {100, 10};
  CHECK_THROWS(validate(bad));
  bad.nu_values = {0.5, 10};
  CHECK_THROWS(validate(bad));
  bad = c;
  bad.seeds.clear();
  CHECK_THROWS(validate(bad));
  bad = c;
  bad.n = 24;
  CHECK_THROWS(validate(bad));
}

TEST_CASE("small sweep is deterministic and resumable") {
  const auto dir = fresh_dir("sweep");
  const auto cfg = small_sweep(dir);
  const auto r1 = run_nu_sweep(cfg);
  CHECK(r1.all_completed);
  REQUIRE(r1.rows.size() == 4);
  for (const auto& row : r1.rows) {
    CHECK(row.flag == "ok");
    CHECK(row.E > 0.0);
    CHECK(std::isfinite(row.empirical_C));
  }
  CHECK(r1.rows[0].E > r1.rows[1].E);
  REQUIRE(r1.fit);
  CHECK(fs::exists(dir / "fit.json"));

  const std::string csv1 = slurp(dir / "sweep.csv");
  // Drop the last row and rerun: the kept rows are not recomputed, the
  // missing one comes back with identical values.
  {
    std::istringstream in(csv1);
    std::string line, kept;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) kept += lines[i] + "\n";
    std::ofstream(dir / "sweep.csv") << kept;
  }
  const auto r2 = run_nu_sweep(cfg);
  REQUIRE(r2.rows.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(r2.rows[i].E == r1.rows[i].E);
    CHECK(r2.rows[i].Vd == r1.rows[i].Vd);
  }
  CHECK(r2.rows[0].wall_s == doctest::Approx(r1.rows[0].wall_s).epsilon(1e-3));

  auto threaded = cfg;
  threaded.threads = 3;
  threaded.output_dir = fresh_dir("sweep_mt");
  const auto r3 = run_nu_sweep(threaded);
  for (std::size_t i = 0; i < 4; ++i) CHECK(r3.rows[i].E == r1.rows[i].E);
  fs::remove_all(dir);
  fs::remove_all(threaded.output_dir);
}

TEST_CASE("vanishing data is degenerate") {
  const auto dir = fresh_dir("degenerate");
  auto cfg = small_sweep(dir);
  cfg.init.v_amplitude = 0.0;
  cfg.init.q_amplitude = 0.0;
  cfg.init.a_amplitude = 0.0;
  const auto r = run_nu_sweep(cfg);
  for (const auto& row : r.rows) CHECK(row.E < kNoiseFloor);
  REQUIRE(r.fit);
  CHECK(r.fit->status == "degenerate: E below noise floor");
  fs::remove_all(dir);
}

TEST_CASE("a failing run is reported, not thrown") {
  const auto dir = fresh_dir("abort");
  auto cfg = small_sweep(dir);
  cfg.init.v_amplitude = 400.0;  // far past the advective step limit
  cfg.seeds = {1};
  const auto r = run_nu_sweep(cfg);
  CHECK_FALSE(r.all_completed);
  for (const auto& row : r.rows) {
    CHECK(row.flag.rfind("aborted", 0) == 0);
    CHECK(std::isnan(row.E));
  }
  fs::remove_all(dir);
}
