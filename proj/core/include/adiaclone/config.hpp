#pragma once

// Declarative run/sweep description and its JSON form.
//
//   system  {g, delta, nu, n_sites, kappa_c, kappa_f, gamma}
//   pulses  {omega_m, t0, t1, tp, T}
//   grid    {dt, sample_stride}
//   model   "full" | "effective"
//   protocol "prepare_w" | "clone"
//   clone   {delta_phase}
//   sweep   {param, values, param2, values2, observable}
//   output  {path}
// Optional extensions: basis {n_max, excitation_cap}, drive {tones, assignment},
// dynamics "auto" | "schrodinger" | "lindblad".

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "adiaclone/dynamics.hpp"
#include "adiaclone/model.hpp"
#include "adiaclone/protocols.hpp"
#include "adiaclone/pulses.hpp"

namespace adiaclone {

enum class Protocol { PrepareW, Clone };
enum class SweepObservable { FinalFidelity, TimeSeries };

struct SweepAxis {
  std::string param;  ///< dotted path, e.g. "pulses.tp"
  std::vector<double> values;

  bool operator==(const SweepAxis&) const = default;
};

struct SweepSpec {
  SystemParams system;
  PulseParams pulses;
  double dt = 0.005;
  int sample_stride = 200;
  ModelKind model = ModelKind::Effective;
  Protocol protocol = Protocol::PrepareW;
  double delta_phase = 0.0;
  BasisOptions basis;
  DriveTones tones = DriveTones::Bichromatic;
  std::optional<PulseAssignment> assignment;
  Dynamics dynamics = Dynamics::Auto;
  std::vector<SweepAxis> axes;  ///< zero, one or two
  SweepObservable observable = SweepObservable::FinalFidelity;
  std::string output_path;

  /// [0, T] at the configured dt and stride.
  TimeGrid time_grid() const;
  ProtocolOptions protocol_options() const;
  /// Throws ConfigError on inconsistent settings (grids, paths, parameters).
  void validate() const;

  bool operator==(const SweepSpec&) const = default;
};

/// Dotted parameter paths accepted by sweeps. "system.kappa" sets kappa_c and
/// kappa_f together.
const std::vector<std::string>& sweepable_parameters();

/// Sets a sweepable parameter; throws ConfigError for unknown paths.
void apply_parameter(SweepSpec& spec, std::string_view path, double value);
double read_parameter(const SweepSpec& spec, std::string_view path);

nlohmann::json to_json(const SweepSpec& spec);
/// `text` is the source document, used only to locate offending lines.
SweepSpec from_json(const nlohmann::json& doc, std::string_view text = {});

/// Parses a config document; errors name the field path and, when it can be
/// located, the line.
SweepSpec parse_config(std::string_view text);
SweepSpec read_config(const std::filesystem::path& path);
void write_config(const SweepSpec& spec, const std::filesystem::path& path);

/// Sets `doc` at a dotted path from a textual value (JSON literal, or a bare
/// string when it does not parse as JSON). Creates intermediate objects.
void set_dotted(nlohmann::json& doc, std::string_view path, std::string_view value);

std::string to_string(ModelKind kind);
std::string to_string(Protocol protocol);

}  // namespace adiaclone
