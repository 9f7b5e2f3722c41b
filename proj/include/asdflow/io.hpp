#pragma once

// File formats.  All floating-point values in CSV files are written with 17
// significant digits so that a write/read cycle is lossless.
//
//   profile     x,r                                   one row per node
//   trajectory  t,volume,area,min_r,max_r,amp_k1..    one row per accepted step
//   branch      B,lambda,amplitude,residual,leading_mu
//
// JSON reports are rendered by nlohmann::json with shortest round-trip numbers.

#include <filesystem>
#include <string>
#include <vector>

#include "asdflow/analysis.hpp"
#include "asdflow/dynamics.hpp"
#include "asdflow/grid.hpp"

namespace asdflow {

/// "%.17g"
std::string format_double(double v);

std::string format_profile_csv(const PeriodicProfile& r);
void write_profile_csv(const std::filesystem::path& path, const PeriodicProfile& r);

/// Rebuilds the grid from the row count and checks every x against it.
/// Throws IoError on unreadable or malformed files.
PeriodicProfile read_profile_csv(const std::filesystem::path& path);

std::string format_trajectory_csv(const TrajectoryRecord& traj);
void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryRecord& traj);

/// Diagnostics and mode amplitudes only; snapshots are left empty.
TrajectoryRecord read_trajectory_csv(const std::filesystem::path& path);

std::string format_branch_csv(const std::vector<BranchSample>& samples);

/// JSON object with the source, radius and one {index, re, im, multiplicity} per entry.
std::string spectrum_json(const SpectrumReport& report);

/// JSON array of the real parts, in entry order.
std::string spectrum_values_json(const SpectrumReport& report);

/// Writes text verbatim; throws IoError on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace asdflow
