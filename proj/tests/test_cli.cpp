#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "criticalflow/littlewood_paley.hpp"
#include "criticalflow/snapshot_io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(CLI_BINARY) + " " + args + " > cli_stdout.txt 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("solve, analyze a snapshot, analyze the functionals") {
  const std::string cfg = CONFIG_DIR;
  fs::remove_all("cli_ins");
  fs::remove_all("cli_cns");
  REQUIRE(run("solve --system ins --config " + cfg + "/ins_taylor_green.toml --out cli_ins") == 0);
  REQUIRE(run("solve --system cns --config " + cfg + "/cns_taylor_green.toml --out cli_cns") == 0);
  const auto manifest = nlohmann::json::parse(slurp("cli_ins/manifest.json"));
  CHECK(manifest["system"] == "ins");
  CHECK(manifest.contains("git_describe"));
  CHECK(manifest.contains("wall_time_s"));
  CHECK(manifest["config"]["grid.n"] == "32");
  CHECK(manifest["snapshots"].size() == 21);

  REQUIRE(run("analyze cli_ins/v_00000.csv --out cli_blocks.csv") == 0);
  std::istringstream csv(slurp("cli_blocks.csv"));
  std::string line, last;
  std::getline(csv, line);
  CHECK(line == "j,block_norm,weight_s");
  int rows = 0;
  while (std::getline(csv, line)) {
    last = line;
    ++rows;
  }
  CHECK(last.rfind("besov_norm,0,", 0) == 0);
  const double value = std::stod(last.substr(std::string("besov_norm,0,").size()));
  const auto snap = criticalflow::read_snapshot("cli_ins/v_00000.csv");
  const auto p = criticalflow::build_partition(snap.field.grid());
  CHECK(value == doctest::Approx(criticalflow::besov(p, snap.field, 0.0)).epsilon(1e-14));
  CHECK(rows == p.blocks() + 1);

  REQUIRE(run("analyze --functionals cli_cns cli_ins --out cli_func") == 0);
  std::istringstream f(slurp("cli_func/functionals.csv"));
  std::getline(f, line);
  CHECK(line == "T,Xd,Yd,Zd,Wd,Vd,E");
  const auto cond = nlohmann::json::parse(slurp("cli_func/conditions.json"));
  CHECK(cond["nu"].get<double>() == 100.0);
  CHECK(cond.contains("smallness"));
  CHECK(cond["bound"]["empirical_C"].get<double>() > 0.0);
}

TEST_CASE("argument errors") {
  CHECK(run("") != 0);
  CHECK(run("solve --system xyz --config " + std::string(CONFIG_DIR) + "/ins_taylor_green.toml") != 0);
  CHECK(run("analyze --functionals only_one") != 0);
  CHECK(run("analyze does_not_exist.csv") != 0);
  CHECK(run("analyze --functionals cli_ins cli_cns") != 0);  // order matters
}

TEST_CASE("sweep exit status and thread cap") {
  fs::remove_all("cli_sweep");
  std::ofstream("cli_sweep.toml") << "dt = 1e-2\nt_end = 0.05\nsave_every = 1\n"
                                     "nu_values = [4, 8]\nseeds = [1]\noutput_dir = cli_sweep\n"
                                     "[grid]\nn = 16\n[init]\nq_amplitude = 0.2\n";
  CHECK(run("sweep --config cli_sweep.toml") == 0);
  CHECK(slurp("cli_sweep/sweep.csv").rfind("nu,seed,E,Xd,Yd,Zd,Wd,Vd,flag,wall_s\n", 0) == 0);
  CHECK(fs::exists("cli_sweep/fit.json"));
  CHECK(fs::exists("cli_sweep/plot_sweep.gp"));
  CHECK(run("sweep --config cli_sweep.toml") == 0);  // all rows present already
  CHECK(::setenv("CRITICALFLOW_THREADS", "0", 1) == 0);
  CHECK(run("sweep --config cli_sweep.toml") != 0);
  CHECK(::setenv("CRITICALFLOW_THREADS", "2", 1) == 0);
  fs::remove_all("cli_sweep");
  CHECK(run("sweep --config cli_sweep.toml") == 0);
  ::unsetenv("CRITICALFLOW_THREADS");

  fs::remove_all("cli_sweep_bad");
  std::ofstream("cli_sweep_bad.toml") << "dt = 1e-2\nt_end = 0.05\nnu_values = [4, 8]\nseeds = [1]\n"
                                         "output_dir = cli_sweep_bad\n[grid]\nn = 16\n"
                                         "[init]\nv_amplitude = 400\n";
  CHECK(run("sweep --config cli_sweep_bad.toml") == 1);
}
