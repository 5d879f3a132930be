#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "criticalflow/field.hpp"
#include "criticalflow/trajectory.hpp"

namespace criticalflow {

/// CSV snapshot: the header `dim,n,length,components,time`, one line of
/// those values, then one line of component samples per grid point
/// (row-major, axis 0 slowest).
void write_snapshot(const std::filesystem::path& path, const SpectralField& f, double time);

struct Snapshot {
  SpectralField field;
  double time = 0.0;
};
Snapshot read_snapshot(const std::filesystem::path& path);

/// Writes manifest.json plus one snapshot per saved level.
void write_trajectory(const std::filesystem::path& dir, const Trajectory& traj,
                      const std::map<std::string, std::string>& config, double wall_s);
/// Reads a directory written by write_trajectory; right-hand sides are
/// re-evaluated from the stored states.
Trajectory read_trajectory(const std::filesystem::path& dir);

/// Version string of the source tree the library was built from.
std::string build_version();

}  // namespace criticalflow
