#pragma once

// Parameter-grid experiments over the protocols, figure presets, and CSV output.
//
// CSV layout (LF line endings, values with 12 significant digits):
//   1-D sweep:   <name>,fidelity
//   2-D sweep:   <name1>,<name2>,fidelity
//   time series: gt,fidelity
// <name> is the last component of the swept parameter path ("tp" for
// "pulses.tp"). A grid point whose integration failed has `nan` as its
// fidelity; the failure message is kept in SweepRow::error.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adiaclone/config.hpp"

namespace adiaclone {

/// Single-run defaults: Omega_m = g, g t_p = 50, g t_0 = 150, g t_1 = 90,
/// Delta = nu = 10g, T = 200/g, three sites, no dissipation, no sweep axes.
SweepSpec base_spec();

/// Figure ids: "3a", "3b", "3c", "4", "5", "6", "7".
const std::vector<std::string>& figure_ids();

/// base_spec() with one swept axis (21 points) or, for "7", a 6x6 kappa x gamma
/// grid under the Lindblad cloning run. Output path defaults to "fig<id>.csv".
/// Throws std::invalid_argument for an unknown id.
SweepSpec figure_preset(std::string_view id);

struct SweepRow {
  std::vector<double> coordinates;  ///< swept values, or {gt} for a time series
  double fidelity = 0.0;
  std::string error;                ///< empty on success
  double wall_seconds = 0.0;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<SweepRow> rows;
  double dt = 0.0;
  std::size_t basis_dimension = 0;
  std::optional<int> excitation_cap;
};

/// Runs one protocol with the spec's base parameters.
ProtocolResult run_protocol(const SweepSpec& spec);

/// Evaluates every grid point (row-major over axes, first axis slowest) on up
/// to `workers` threads. Rows are ordered by grid index regardless of worker
/// count. Writes the CSV when spec.output_path is set.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

std::vector<std::string> csv_header(const SweepSpec& spec);
std::string format_csv(const SweepResult& result);
void write_csv(const SweepResult& result, const std::filesystem::path& path);

}  // namespace adiaclone
