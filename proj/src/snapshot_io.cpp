#include "criticalflow/snapshot_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "criticalflow/cns_solver.hpp"
#include "criticalflow/ins_solver.hpp"
#include "criticalflow/spectral.hpp"

#ifndef CRITICALFLOW_GIT_DESCRIBE
#define CRITICALFLOW_GIT_DESCRIBE "unknown"
#endif

namespace criticalflow {

namespace {

constexpr const char* kSnapshotHeader = "dim,n,length,components,time";

std::string snapshot_name(const char* stem, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%05zu.csv", stem, i);
  return buf;
}

}  // namespace

std::string build_version() { return CRITICALFLOW_GIT_DESCRIBE; }

void write_snapshot(const std::filesystem::path& path, const SpectralField& f, double time) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const Grid& g = f.grid();
  const PhysicalField s = to_physical(f);
  char buf[64];
  out << kSnapshotHeader << "\n";
  std::snprintf(buf, sizeof buf, "%.17g", g.length());
  out << g.dim() << "," << g.n() << "," << buf << "," << f.components() << ",";
  std::snprintf(buf, sizeof buf, "%.17g", time);
  out << buf << "\n";
  for (std::size_t i = 0; i < g.modes(); ++i) {
    for (int c = 0; c < f.components(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", s.component(c)[i]);
      out << (c ? "," : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != kSnapshotHeader) throw std::runtime_error(path.string() + ": not a field snapshot");
  std::getline(in, line);
  int dim = 0, n = 0, comps = 0;
  double length = 0.0, time = 0.0;
  {
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    if (!(ss >> dim >> n >> length >> comps >> time))
      throw std::runtime_error(path.string() + ": malformed metadata line");
  }
  const Grid g = make_grid(dim, n, length);
  PhysicalField f(g, comps);
  for (std::size_t i = 0; i < g.modes(); ++i) {
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": sample rows missing");
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    for (int c = 0; c < comps; ++c)
      if (!(ss >> f.component(c)[i])) throw std::runtime_error(path.string() + ": short sample row");
  }
  return {to_spectral(f), time};
}

void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const std::map<std::string, std::string>& config, double wall_s) {
  std::filesystem::create_directories(dir);
  nlohmann::json m;
  m["system"] = traj.system;
  m["grid"] = {{"dim", traj.grid.dim()}, {"n", traj.grid.n()}, {"length", traj.grid.length()}};
  m["mu"] = traj.mu;
  m["lambda"] = traj.lambda;
  m["gamma"] = traj.gamma;
  m["config"] = config;
  m["git_describe"] = build_version();
  m["wall_time_s"] = wall_s;
  nlohmann::json snaps = nlohmann::json::array();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    nlohmann::json e;
    e["time"] = traj.t[i];
    e["v"] = snapshot_name("v", i);
    write_snapshot(dir / snapshot_name("v", i), traj.v[i], traj.t[i]);
    if (traj.has_density()) {
      e["a"] = snapshot_name("a", i);
      write_snapshot(dir / snapshot_name("a", i), traj.a[i], traj.t[i]);
    }
    snaps.push_back(e);
  }
  m["snapshots"] = snaps;
  std::ofstream out(dir / "manifest.json");
  out << m.dump(2) << "\n";
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
}

Trajectory read_trajectory(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("no manifest.json in " + dir.string());
  const nlohmann::json m = nlohmann::json::parse(in);
  Trajectory traj;
  traj.system = m.at("system").get<std::string>();
  traj.grid = make_grid(m.at("grid").at("dim").get<int>(), m.at("grid").at("n").get<int>(),
                        m.at("grid").at("length").get<double>());
  traj.mu = m.at("mu").get<double>();
  traj.lambda = m.at("lambda").get<double>();
  traj.gamma = m.at("gamma").get<double>();
  for (const auto& e : m.at("snapshots")) {
    // Recreate each field on the shared grid handle.
    auto load = [&](const std::string& name) {
      Snapshot s = read_snapshot(dir / name);
      auto coeffs = s.field.coeffs();
      return SpectralField(traj.grid, s.field.components(),
                           std::vector<Complex>(coeffs.begin(), coeffs.end()));
    };
    traj.t.push_back(e.at("time").get<double>());
    traj.v.push_back(dealias(load(e.at("v").get<std::string>())));
    if (traj.system == "cns") traj.a.push_back(dealias(load(e.at("a").get<std::string>())));
  }
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.system == "cns") {
      CnsState s{traj.t[i], traj.a[i], traj.v[i], {traj.mu, traj.lambda}, {traj.gamma}};
      CnsRates r = cns_rhs(s);
      traj.a_t.push_back(std::move(r.da_dt));
      traj.v_t.push_back(std::move(r.dv_dt));
    } else {
      traj.v_t.push_back(ins_rhs(InsState{traj.t[i], traj.v[i], traj.mu}));
    }
  }
  return traj;
}

}  // namespace criticalflow
