#include "adiaclone/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "adiaclone/errors.hpp"

namespace adiaclone {

using nlohmann::json;

TimeGrid SweepSpec::time_grid() const { return TimeGrid{0.0, pulses.T, dt, sample_stride}; }

ProtocolOptions SweepSpec::protocol_options() const {
  ProtocolOptions o;
  o.basis = basis;
  o.model.tones = tones;
  o.assignment = assignment;
  o.dynamics = dynamics;
  return o;
}

std::string to_string(ModelKind kind) { return kind == ModelKind::Full ? "full" : "effective"; }
std::string to_string(Protocol protocol) { return protocol == Protocol::Clone ? "clone" : "prepare_w"; }

namespace {

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    parts.emplace_back(path.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

// Best-effort line lookup: finds each quoted path component in turn.
int locate_line(std::string_view text, std::string_view path) {
  if (text.empty() || path.empty()) return 0;
  std::size_t pos = 0;
  std::optional<std::size_t> found;
  for (const auto& part : split_path(path)) {
    const auto p = text.find("\"" + part + "\"", pos);
    if (p == std::string_view::npos) break;
    found = p;
    pos = p + part.size() + 2;
  }
  if (!found) return 0;
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(*found), '\n'));
}

std::string parent_of(const std::string& path) {
  const auto dot = path.rfind('.');
  return dot == std::string::npos ? std::string() : path.substr(0, dot);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& path, const std::string& message, bool use_parent_line = false) const {
    throw ConfigError(path, message, locate_line(text_, use_parent_line ? parent_of(path) : path));
  }

  const json* child(const json& obj, const std::string& path, const char* key, bool required) const {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
      if (required) fail(path, "missing required field", true);
      return nullptr;
    }
    return &*it;
  }

  const json* section(const json& doc, const char* key, bool required) const {
    const json* s = child(doc, key, key, required);
    if (s && !s->is_object()) fail(key, "expected an object");
    return s;
  }

  void reject_unknown(const json& obj, const std::string& prefix, std::initializer_list<const char*> known) const {
    for (const auto& [key, value] : obj.items()) {
      if (std::none_of(known.begin(), known.end(), [&key](const char* k) { return key == k; }))
        fail(prefix.empty() ? key : prefix + "." + key, "unknown field");
    }
  }

  void number(const json* obj, const std::string& prefix, const char* key, double& out, bool required) const {
    const std::string path = prefix + "." + key;
    if (!obj) {
      if (required) fail(path, "missing required field", true);
      return;
    }
    const json* v = child(*obj, path, key, required);
    if (!v) return;
    if (!v->is_number()) fail(path, "expected a number");
    out = v->get<double>();
  }

  void integer(const json* obj, const std::string& prefix, const char* key, int& out, bool required) const {
    const std::string path = prefix + "." + key;
    if (!obj) {
      if (required) fail(path, "missing required field", true);
      return;
    }
    const json* v = child(*obj, path, key, required);
    if (!v) return;
    if (!v->is_number_integer()) fail(path, "expected an integer");
    out = v->get<int>();
  }

  std::string string(const json& v, const std::string& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }

  std::vector<double> numbers(const json& v, const std::string& path) const {
    if (!v.is_array()) fail(path, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
      if (!x.is_number()) fail(path, "expected an array of numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }

 private:
  std::string_view text_;
};

template <typename Enum>
Enum parse_enum(const Reader& r, const json& v, const std::string& path,
                std::initializer_list<std::pair<const char*, Enum>> options) {
  const std::string s = r.string(v, path);
  for (const auto& [name, value] : options)
    if (s == name) return value;
  std::string allowed;
  for (const auto& [name, value] : options) allowed += (allowed.empty() ? "" : ", ") + std::string(name);
  r.fail(path, "unknown value '" + s + "' (expected one of: " + allowed + ")");
}

const char* dynamics_name(Dynamics d) {
  switch (d) {
    case Dynamics::Schrodinger: return "schrodinger";
    case Dynamics::Lindblad: return "lindblad";
    case Dynamics::Auto: break;
  }
  return "auto";
}

}  // namespace

const std::vector<std::string>& sweepable_parameters() {
  static const std::vector<std::string> names{
      "system.g",      "system.delta", "system.nu",      "system.n_sites",   "system.kappa_c", "system.kappa_f",
      "system.gamma",  "system.kappa", "pulses.omega_m", "pulses.t0",        "pulses.t1",      "pulses.tp",
      "pulses.T",      "grid.dt",      "clone.delta_phase"};
  return names;
}

void apply_parameter(SweepSpec& s, std::string_view path, double value) {
  if (path == "system.g") s.system.g = value;
  else if (path == "system.delta") s.system.delta = value;
  else if (path == "system.nu") s.system.nu = value;
  else if (path == "system.n_sites") {
    s.system.n_sites = static_cast<int>(std::lround(value));
    if (s.assignment) s.assignment = PulseAssignment::standard(s.system.n_sites);
  } else if (path == "system.kappa_c") s.system.kappa_c = value;
  else if (path == "system.kappa_f") s.system.kappa_f = value;
  else if (path == "system.gamma") s.system.gamma = value;
  else if (path == "system.kappa") s.system.kappa_c = s.system.kappa_f = value;
  else if (path == "pulses.omega_m") s.pulses.omega_m = value;
  else if (path == "pulses.t0") s.pulses.t0 = value;
  else if (path == "pulses.t1") s.pulses.t1 = value;
  else if (path == "pulses.tp") s.pulses.tp = value;
  else if (path == "pulses.T") s.pulses.T = value;
  else if (path == "grid.dt") s.dt = value;
  else if (path == "clone.delta_phase") s.delta_phase = value;
  else throw ConfigError(std::string(path), "not a sweepable parameter");
}

double read_parameter(const SweepSpec& s, std::string_view path) {
  if (path == "system.g") return s.system.g;
  if (path == "system.delta") return s.system.delta;
  if (path == "system.nu") return s.system.nu;
  if (path == "system.n_sites") return s.system.n_sites;
  if (path == "system.kappa_c" || path == "system.kappa") return s.system.kappa_c;
  if (path == "system.kappa_f") return s.system.kappa_f;
  if (path == "system.gamma") return s.system.gamma;
  if (path == "pulses.omega_m") return s.pulses.omega_m;
  if (path == "pulses.t0") return s.pulses.t0;
  if (path == "pulses.t1") return s.pulses.t1;
  if (path == "pulses.tp") return s.pulses.tp;
  if (path == "pulses.T") return s.pulses.T;
  if (path == "grid.dt") return s.dt;
  if (path == "clone.delta_phase") return s.delta_phase;
  throw ConfigError(std::string(path), "not a sweepable parameter");
}

void SweepSpec::validate() const {
  auto wrap = [](const char* path, auto&& check) {
    try {
      check();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(path, e.what());
    }
  };
  wrap("system", [this] { system.validate(); });
  wrap("pulses", [this] { pulses.validate(); });
  wrap("grid", [this] { time_grid().validate(); });
  if (model == ModelKind::Effective && system.delta == 0.0)
    throw ConfigError("system.delta", "must be non-zero for the effective model");
  if (model == ModelKind::Effective && system.gamma > 0.0)
    throw ConfigError("system.gamma", "emitter decay needs level e; use model \"full\"");
  if (basis.n_max < 0) throw ConfigError("basis.n_max", "must be >= 0");
  if (basis.excitation_cap && *basis.excitation_cap < 0) throw ConfigError("basis.excitation_cap", "must be >= 0");
  if (assignment && assignment->per_site.size() != static_cast<std::size_t>(system.n_sites))
    throw ConfigError("drive.assignment", "needs one entry per site");
  if (axes.size() > 2) throw ConfigError("sweep", "at most two swept parameters are supported");
  if (observable == SweepObservable::TimeSeries && !axes.empty())
    throw ConfigError("sweep.observable", "time_series runs take no swept parameters");
  const auto& known = sweepable_parameters();
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const std::string key = i == 0 ? "sweep.param" : "sweep.param2";
    const std::string vkey = i == 0 ? "sweep.values" : "sweep.values2";
    if (std::find(known.begin(), known.end(), axes[i].param) == known.end())
      throw ConfigError(key, "unknown parameter path '" + axes[i].param + "'");
    if (axes[i].values.empty()) throw ConfigError(vkey, "grid must not be empty");
    if (std::adjacent_find(axes[i].values.begin(), axes[i].values.end(), std::greater_equal<>()) != axes[i].values.end())
      throw ConfigError(vkey, "grid must be strictly increasing");
  }
}

json to_json(const SweepSpec& s) {
  json doc;
  doc["system"] = {{"g", s.system.g},           {"delta", s.system.delta},     {"nu", s.system.nu},
                   {"n_sites", s.system.n_sites}, {"kappa_c", s.system.kappa_c}, {"kappa_f", s.system.kappa_f},
                   {"gamma", s.system.gamma}};
  doc["pulses"] = {{"omega_m", s.pulses.omega_m}, {"t0", s.pulses.t0}, {"t1", s.pulses.t1},
                   {"tp", s.pulses.tp},           {"T", s.pulses.T}};
  doc["grid"] = {{"dt", s.dt}, {"sample_stride", s.sample_stride}};
  doc["model"] = to_string(s.model);
  doc["protocol"] = to_string(s.protocol);
  doc["clone"] = {{"delta_phase", s.delta_phase}};
  doc["basis"] = {{"n_max", s.basis.n_max},
                  {"excitation_cap", s.basis.excitation_cap ? json(*s.basis.excitation_cap) : json(nullptr)}};
  json assignment = nullptr;
  if (s.assignment) {
    assignment = json::array();
    for (PulseShape p : s.assignment->per_site) assignment.push_back(p == PulseShape::Omega0 ? "omega0" : "omega");
  }
  doc["drive"] = {{"tones", s.tones == DriveTones::Bichromatic ? "bichromatic" : "single"},
                  {"assignment", assignment}};
  doc["dynamics"] = dynamics_name(s.dynamics);
  json sweep = {{"observable", s.observable == SweepObservable::TimeSeries ? "time_series" : "final_fidelity"}};
  if (!s.axes.empty()) {
    sweep["param"] = s.axes[0].param;
    sweep["values"] = s.axes[0].values;
  }
  if (s.axes.size() > 1) {
    sweep["param2"] = s.axes[1].param;
    sweep["values2"] = s.axes[1].values;
  }
  doc["sweep"] = sweep;
  doc["output"] = {{"path", s.output_path}};
  return doc;
}

SweepSpec from_json(const json& doc, std::string_view text) {
  const Reader r(text);
  if (!doc.is_object()) r.fail("", "config document must be a JSON object");
  r.reject_unknown(doc, "", {"system", "pulses", "grid", "model", "protocol", "clone", "basis", "drive", "dynamics",
                             "sweep", "output"});
  SweepSpec s;

  const json* sys = r.section(doc, "system", true);
  r.reject_unknown(*sys, "system", {"g", "delta", "nu", "n_sites", "kappa_c", "kappa_f", "gamma"});
  r.number(sys, "system", "g", s.system.g, true);
  r.number(sys, "system", "delta", s.system.delta, true);
  r.number(sys, "system", "nu", s.system.nu, true);
  r.integer(sys, "system", "n_sites", s.system.n_sites, true);
  r.number(sys, "system", "kappa_c", s.system.kappa_c, false);
  r.number(sys, "system", "kappa_f", s.system.kappa_f, false);
  r.number(sys, "system", "gamma", s.system.gamma, false);

  const json* pul = r.section(doc, "pulses", true);
  r.reject_unknown(*pul, "pulses", {"omega_m", "t0", "t1", "tp", "T"});
  r.number(pul, "pulses", "omega_m", s.pulses.omega_m, true);
  r.number(pul, "pulses", "t0", s.pulses.t0, true);
  r.number(pul, "pulses", "t1", s.pulses.t1, true);
  r.number(pul, "pulses", "tp", s.pulses.tp, true);
  r.number(pul, "pulses", "T", s.pulses.T, true);

  if (const json* grid = r.section(doc, "grid", false)) {
    r.reject_unknown(*grid, "grid", {"dt", "sample_stride"});
    r.number(grid, "grid", "dt", s.dt, false);
    r.integer(grid, "grid", "sample_stride", s.sample_stride, false);
  }
  if (const json* m = r.child(doc, "model", "model", false))
    s.model = parse_enum<ModelKind>(r, *m, "model", {{"full", ModelKind::Full}, {"effective", ModelKind::Effective}});
  if (const json* p = r.child(doc, "protocol", "protocol", false))
    s.protocol = parse_enum<Protocol>(r, *p, "protocol", {{"prepare_w", Protocol::PrepareW}, {"clone", Protocol::Clone}});
  if (const json* c = r.section(doc, "clone", false)) {
    r.reject_unknown(*c, "clone", {"delta_phase"});
    r.number(c, "clone", "delta_phase", s.delta_phase, false);
  }
  if (const json* b = r.section(doc, "basis", false)) {
    r.reject_unknown(*b, "basis", {"n_max", "excitation_cap"});
    r.integer(b, "basis", "n_max", s.basis.n_max, false);
    const auto it = b->find("excitation_cap");
    if (it != b->end()) {
      if (it->is_null()) {
        s.basis.excitation_cap.reset();
      } else {
        int cap = 0;
        r.integer(b, "basis", "excitation_cap", cap, false);
        s.basis.excitation_cap = cap;
      }
    }
  }
  if (const json* d = r.section(doc, "drive", false)) {
    r.reject_unknown(*d, "drive", {"tones", "assignment"});
    if (const json* t = r.child(*d, "drive.tones", "tones", false))
      s.tones = parse_enum<DriveTones>(r, *t, "drive.tones",
                                       {{"bichromatic", DriveTones::Bichromatic}, {"single", DriveTones::Single}});
    if (const json* a = r.child(*d, "drive.assignment", "assignment", false)) {
      if (!a->is_array()) r.fail("drive.assignment", "expected an array of \"omega\" / \"omega0\"");
      PulseAssignment pa;
      for (const auto& x : *a)
        pa.per_site.push_back(parse_enum<PulseShape>(r, x, "drive.assignment",
                                                     {{"omega", PulseShape::Omega}, {"omega0", PulseShape::Omega0}}));
      s.assignment = std::move(pa);
    }
  }
  if (const json* d = r.child(doc, "dynamics", "dynamics", false))
    s.dynamics = parse_enum<Dynamics>(
        r, *d, "dynamics",
        {{"auto", Dynamics::Auto}, {"schrodinger", Dynamics::Schrodinger}, {"lindblad", Dynamics::Lindblad}});

  if (const json* sw = r.section(doc, "sweep", false)) {
    r.reject_unknown(*sw, "sweep", {"param", "values", "param2", "values2", "observable"});
    if (const json* o = r.child(*sw, "sweep.observable", "observable", false))
      s.observable = parse_enum<SweepObservable>(
          r, *o, "sweep.observable",
          {{"final_fidelity", SweepObservable::FinalFidelity}, {"time_series", SweepObservable::TimeSeries}});
    if (const json* p = r.child(*sw, "sweep.param", "param", false)) {
      const json* v = r.child(*sw, "sweep.values", "values", true);
      s.axes.push_back({r.string(*p, "sweep.param"), r.numbers(*v, "sweep.values")});
    }
    if (const json* p2 = r.child(*sw, "sweep.param2", "param2", false)) {
      if (s.axes.empty()) r.fail("sweep.param2", "requires sweep.param");
      const json* v = r.child(*sw, "sweep.values2", "values2", true);
      s.axes.push_back({r.string(*p2, "sweep.param2"), r.numbers(*v, "sweep.values2")});
    }
  }
  if (const json* out = r.section(doc, "output", false)) {
    r.reject_unknown(*out, "output", {"path"});
    if (const json* p = r.child(*out, "output.path", "path", false)) s.output_path = r.string(*p, "output.path");
  }

  try {
    s.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(e.field(), e.message(), locate_line(text, e.field()));
  }
  return s;
}

SweepSpec parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const int line = 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n'));
    throw ConfigError("", std::string("malformed JSON: ") + e.what(), line);
  }
  return from_json(doc, text);
}

SweepSpec read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void write_config(const SweepSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file '" + path.string() + "'");
  out << to_json(spec).dump(2) << '\n';
}

void set_dotted(json& doc, std::string_view path, std::string_view value) {
  const auto parts = split_path(path);
  json* node = &doc;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    json& next = (*node)[parts[i]];
    if (next.is_null()) next = json::object();
    if (!next.is_object()) throw ConfigError(std::string(path), "'" + parts[i] + "' is not an object");
    node = &next;
  }
  json parsed;
  try {
    parsed = json::parse(value.begin(), value.end());
  } catch (const json::parse_error&) {
    parsed = std::string(value);
  }
  (*node)[parts.back()] = std::move(parsed);
}

}  // namespace adiaclone
