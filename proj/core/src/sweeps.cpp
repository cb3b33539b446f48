#include "adiaclone/sweeps.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include "adiaclone/errors.hpp"

namespace adiaclone {

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids{"3a", "3b", "3c", "4", "5", "6", "7"};
  return ids;
}

namespace {

std::vector<double> linear_grid(double first, double step, int count) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[i] = first + step * i;
  return v;
}

}  // namespace

SweepSpec base_spec() {
  SweepSpec s;
  s.system = SystemParams{1.0, 10.0, 10.0, 3, 0.0, 0.0, 0.0};
  s.pulses = PulseParams{1.0, 150.0, 90.0, 50.0, 200.0};
  s.dt = 0.005;
  s.sample_stride = 200;
  s.model = ModelKind::Effective;
  s.protocol = Protocol::PrepareW;
  return s;
}

SweepSpec figure_preset(std::string_view id) {
  SweepSpec s = base_spec();
  s.output_path = "fig" + std::string(id) + ".csv";
  if (id == "3a") {
    s.axes = {{"pulses.omega_m", linear_grid(0.1, 0.1, 21)}};
  } else if (id == "3b") {
    s.axes = {{"pulses.t1", linear_grid(0.0, 7.5, 21)}};
  } else if (id == "3c") {
    s.axes = {{"pulses.tp", linear_grid(10.0, 5.0, 21)}};
  } else if (id == "4") {
    s.axes = {{"system.nu", linear_grid(0.5, 0.5, 21)}};
  } else if (id == "5") {
    s.axes = {{"system.delta", linear_grid(0.5, 0.5, 21)}};
  } else if (id == "6") {
    s.observable = SweepObservable::TimeSeries;
  } else if (id == "7") {
    s.model = ModelKind::Full;
    s.protocol = Protocol::Clone;
    s.dynamics = Dynamics::Lindblad;
    s.axes = {{"system.kappa", linear_grid(0.0, 0.002, 6)}, {"system.gamma", linear_grid(0.0, 0.002, 6)}};
  } else {
    throw std::invalid_argument("unknown figure id '" + std::string(id) + "' (expected 3a, 3b, 3c, 4, 5, 6 or 7)");
  }
  return s;
}

ProtocolResult run_protocol(const SweepSpec& spec) {
  spec.validate();
  const TimeGrid grid = spec.time_grid();
  const ProtocolOptions options = spec.protocol_options();
  if (spec.protocol == Protocol::Clone)
    return clone_phase_covariant(spec.system, spec.pulses, CloningInput{spec.delta_phase}, spec.model, grid, options);
  return prepare_w_state(spec.system, spec.pulses, spec.model, grid, options);
}

std::vector<std::string> csv_header(const SweepSpec& spec) {
  if (spec.observable == SweepObservable::TimeSeries) return {"gt", "fidelity"};
  std::vector<std::string> header;
  for (const auto& axis : spec.axes) {
    const auto dot = axis.param.rfind('.');
    header.push_back(dot == std::string::npos ? axis.param : axis.param.substr(dot + 1));
  }
  header.emplace_back("fidelity");
  return header;
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  spec.validate();
  if (workers < 1) throw std::invalid_argument("run_sweep: workers must be >= 1");

  SweepResult result{spec, {}, spec.dt, 0, spec.basis.excitation_cap};
  result.basis_dimension = protocol_basis(spec.system, spec.model, spec.basis)->dimension();

  if (spec.observable == SweepObservable::TimeSeries) {
    const auto start = std::chrono::steady_clock::now();
    const ProtocolResult run = run_protocol(spec);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto& fid = run.trajectory.series("fidelity");
    for (std::size_t i = 0; i < run.trajectory.samples(); ++i)
      result.rows.push_back({{run.trajectory.times[i]}, fid[i], {}, i + 1 == fid.size() ? wall : 0.0});
  } else {
    // Grid points in row-major order; an empty axis list is a single point.
    std::vector<std::vector<double>> points{{}};
    for (const auto& axis : spec.axes) {
      std::vector<std::vector<double>> next;
      for (const auto& p : points)
        for (double v : axis.values) {
          next.push_back(p);
          next.back().push_back(v);
        }
      points = std::move(next);
    }
    result.rows.resize(points.size());

    std::atomic<std::size_t> next_index{0};
    auto worker = [&] {
      for (std::size_t i = next_index++; i < points.size(); i = next_index++) {
        SweepRow& row = result.rows[i];
        row.coordinates = points[i];
        const auto start = std::chrono::steady_clock::now();
        try {
          SweepSpec point = spec;
          point.axes.clear();
          for (std::size_t a = 0; a < spec.axes.size(); ++a) apply_parameter(point, spec.axes[a].param, points[i][a]);
          row.fidelity = run_protocol(point).final_fidelity;
        } catch (const std::exception& e) {
          row.fidelity = std::numeric_limits<double>::quiet_NaN();
          row.error = e.what();
        }
        row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
    };
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), points.size());
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }

  if (!spec.output_path.empty()) write_csv(result, spec.output_path);
  return result;
}

namespace {

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string format_csv(const SweepResult& result) {
  std::string out;
  const auto header = csv_header(result.spec);
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : result.rows) {
    for (double c : row.coordinates) out += format_value(c) + ",";
    out += format_value(row.fidelity) + "\n";
  }
  return out;
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << format_csv(result);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace adiaclone
