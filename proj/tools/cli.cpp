#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "adiaclone/errors.hpp"
#include "adiaclone/sweeps.hpp"

namespace adiaclone::cli {
namespace {

struct Invocation {
  std::string subcommand;
  std::string figure_id;
  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  int workers = 1;
  std::string model;
  std::optional<double> time;
  std::optional<double> delta_phase;
};

std::string fmt(double v, int precision = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SweepSpec load_spec(const Invocation& inv, std::ostream& err) {
  SweepSpec spec;
  if (inv.subcommand == "figure") {
    if (!inv.config_path.empty())
      throw ConfigError("", "figure presets fix their own parameters; adjust them with --set instead of --config");
    try {
      spec = figure_preset(inv.figure_id);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("figure", e.what());
    }
  } else if (!inv.config_path.empty()) {
    spec = read_config(inv.config_path);
  } else {
    spec = base_spec();
  }

  if (inv.overrides.empty() && inv.model.empty() && !inv.delta_phase) return spec;

  nlohmann::json doc = to_json(spec);
  for (const auto& item : inv.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set", "expected <dotted.path>=<value>, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    set_dotted(doc, key, value);
    err << "override " << key << " = " << value << "\n";
  }
  if (!inv.model.empty()) {
    doc["model"] = inv.model;
    err << "override model = " << inv.model << "\n";
  }
  if (inv.delta_phase) {
    doc["clone"]["delta_phase"] = *inv.delta_phase;
    err << "override clone.delta_phase = " << fmt(*inv.delta_phase, 12) << "\n";
  }
  return from_json(doc);
}

void write_series(const Trajectory& traj, const std::string& path) {
  SweepSpec echo;
  echo.observable = SweepObservable::TimeSeries;
  SweepResult result{echo, {}, 0.0, 0, std::nullopt};
  const auto& fid = traj.series("fidelity");
  for (std::size_t i = 0; i < traj.samples(); ++i) result.rows.push_back({{traj.times[i]}, fid[i], {}, 0.0});
  write_csv(result, path);
}

int dark_state_command(const Invocation& inv, const SweepSpec& spec, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const double t = inv.time.value_or(spec.pulses.t0);
  const BasisPtr basis = protocol_basis(spec.system, ModelKind::Effective, spec.basis);
  const DriveSchedule drive{spec.pulses, spec.assignment.value_or(PulseAssignment::standard(spec.system.n_sites))};
  const HamiltonianGenerator h = effective_hamiltonian(spec.system, drive, basis);
  const DarkState dark = dark_state(spec.system, drive, basis, t);
  const double residual = (h.matrix_at(t) * dark.state.amplitudes()).norm();
  if (dark.degenerate) err << "note: a Raman coupling vanishes at t=" << fmt(t) << "; showing the limiting state\n";

  std::ostringstream table;
  table << "state,re,im\n";
  for (std::size_t i = 0; i < basis->dimension(); ++i) {
    const Complex a = dark.state[i];
    if (std::abs(a) < 1e-15) continue;
    const std::string label = basis->state(i).label();
    out << "  " << label << "  " << fmt(a.real(), 10) << (a.imag() < 0 ? " - " : " + ") << fmt(std::abs(a.imag()), 10)
        << "i\n";
    table << label << "," << fmt(a.real(), 12) << "," << fmt(a.imag(), 12) << "\n";
  }
  if (!inv.out_path.empty()) {
    std::ofstream f(inv.out_path, std::ios::binary);
    if (!f || !(f << table.str())) throw std::runtime_error("cannot write '" + inv.out_path + "'");
  }
  out << "dark-state t=" << fmt(t) << " residual=" << fmt(residual, 3) << " basis_dimension=" << basis->dimension()
      << " wall_seconds=" << fmt(seconds_since(start), 3) << "\n";
  return kOk;
}

int protocol_command(const Invocation& inv, SweepSpec spec, std::ostream& out) {
  spec.protocol = inv.subcommand == "clone" ? Protocol::Clone : Protocol::PrepareW;
  const auto start = std::chrono::steady_clock::now();
  const ProtocolResult result = run_protocol(spec);
  const double wall = seconds_since(start);
  if (!inv.out_path.empty()) write_series(result.trajectory, inv.out_path);

  out << inv.subcommand << " model=" << to_string(spec.model) << " fidelity=" << fmt(result.final_fidelity, 8);
  if (spec.protocol == Protocol::Clone) {
    out << " copy_fidelity=";
    for (std::size_t i = 0; i < result.copy_fidelities.size(); ++i)
      out << (i ? ":" : "") << fmt(result.copy_fidelities[i], 8);
  }
  out << " basis_dimension=" << result.basis_dimension << " wall_seconds=" << fmt(wall, 3) << "\n";
  return kOk;
}

int sweep_command(const Invocation& inv, SweepSpec spec, std::ostream& out, std::ostream& err) {
  if (!inv.out_path.empty()) spec.output_path = inv.out_path;
  if (spec.output_path.empty()) throw ConfigError("output.path", "a sweep needs an output path (config or --out)");
  if (inv.subcommand == "sweep" && spec.axes.empty() && spec.observable == SweepObservable::FinalFidelity)
    throw ConfigError("sweep.param", "no sweep axis configured");

  const auto start = std::chrono::steady_clock::now();
  const SweepResult result = run_sweep(spec, inv.workers);
  const double wall = seconds_since(start);

  std::size_t failed = 0;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& row : result.rows) {
    if (!row.error.empty()) {
      ++failed;
      err << "grid point";
      for (double c : row.coordinates) err << " " << fmt(c, 12);
      err << " failed: " << row.error << "\n";
      continue;
    }
    lo = std::min(lo, row.fidelity);
    hi = std::max(hi, row.fidelity);
  }
  err << "wrote " << spec.output_path << "\n";
  out << (inv.subcommand == "figure" ? "figure " + inv.figure_id : std::string("sweep")) << " rows=" << result.rows.size()
      << " failed=" << failed << " min_fidelity=" << fmt(lo, 8) << " max_fidelity=" << fmt(hi, 8)
      << " final_fidelity=" << fmt(result.rows.empty() ? NAN : result.rows.back().fidelity, 8)
      << " basis_dimension=" << result.basis_dimension << " wall_seconds=" << fmt(wall, 3) << "\n";
  return failed ? kNumericalError : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Invocation inv;
  CLI::App app{"Adiabatic W-state preparation and phase-covariant cloning in a fiber-coupled NV/cavity network."};
  app.name("adiaclone");
  app.set_version_flag("--version", std::string("adiaclone ") + ADIACLONE_VERSION);
  app.require_subcommand(1, 1);
  app.fallthrough();

  app.add_option("--config", inv.config_path, "JSON run/sweep description")->check(CLI::ExistingFile);
  app.add_option("--out", inv.out_path, "Output file (CSV)");
  app.add_option("--set", inv.overrides, "Override <dotted.path>=<value>, applied after --config (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--workers", inv.workers, "Sweep worker threads")->check(CLI::PositiveNumber);
  app.add_option("--model", inv.model, "Hamiltonian: full|effective")->check(CLI::IsMember({"full", "effective"}));
  app.add_option("--time", inv.time, "Evaluation time in 1/g (dark-state only; default t0)");
  app.add_option("--delta-phase", inv.delta_phase, "Input phase in radians (clone only)");

  app.add_subcommand("dark-state", "Print the instantaneous dark state of the effective Hamiltonian");
  app.add_subcommand("prepare-w", "Run W-state preparation; --out writes gt,fidelity");
  app.add_subcommand("clone", "Run phase-covariant cloning; --out writes gt,fidelity");
  app.add_subcommand("sweep", "Run the sweep described by --config");
  auto* figure = app.add_subcommand("figure", "Run a figure preset (3a 3b 3c 4 5 6 7)");
  figure->add_option("id", inv.figure_id, "Figure id")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  inv.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (inv.time && inv.subcommand != "dark-state") throw ConfigError("--time", "only valid with dark-state");
    if (inv.delta_phase && inv.subcommand != "clone") throw ConfigError("--delta-phase", "only valid with clone");
    const SweepSpec spec = load_spec(inv, err);
    if (inv.subcommand == "dark-state") return dark_state_command(inv, spec, out, err);
    if (inv.subcommand == "prepare-w" || inv.subcommand == "clone") return protocol_command(inv, spec, out);
    return sweep_command(inv, spec, out, err);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace adiaclone::cli
