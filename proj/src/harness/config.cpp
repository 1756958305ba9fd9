#include "nsk/harness/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "nsk/errors.hpp"

namespace nsk::harness {
namespace {

using nlohmann::json;

// Reads fields from one JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& obj, std::string name) : obj_(obj), name_(std::move(name)) {
    if (!obj_.is_object()) throw ConfigError("'" + name_ + "' must be an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return obj_.contains(key);
  }

  template <class T>
  T get(const std::string& key, const T& fallback) {
    if (!has(key)) return fallback;
    try {
      return obj_.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError("'" + name_ + "." + key + "' has the wrong type");
    }
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return length_value(obj_.at(key), name_ + "." + key);
  }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return obj_.at(key);
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items())
      if (!seen_.count(key)) throw ConfigError("unknown key '" + name_ + "." + key + "'");
  }

  // Accepts plain numbers and strings such as "2pi", "pi", "0.5pi".
  static double length_value(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
      std::string s = v.get<std::string>();
      if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
        const std::string head = s.substr(0, s.size() - 2);
        try {
          return (head.empty() ? 1.0 : std::stod(head)) * std::numbers::pi;
        } catch (const std::exception&) {
        }
      }
    }
    throw ConfigError("'" + where + "' must be a number or a multiple of pi such as \"2pi\"");
  }

 private:
  const json& obj_;
  std::string name_;
  std::set<std::string> seen_;
};

std::array<int, 2> read_counts(const json& v, int dim) {
  std::array<int, 2> n{1, 1};
  if (v.is_number_integer()) {
    n[0] = v.get<int>();
    if (dim > 1) n[1] = n[0];
    return n;
  }
  if (!v.is_array() || static_cast<int>(v.size()) != dim) throw ConfigError("'grid.n' needs one entry per axis");
  for (int a = 0; a < dim; ++a) n[a] = v[a].get<int>();
  return n;
}

std::array<double, 2> read_lengths(const json& v, int dim) {
  std::array<double, 2> len{1.0, 1.0};
  if (!v.is_array()) {
    len[0] = Section::length_value(v, "grid.length");
    if (dim > 1) len[1] = len[0];
    return len;
  }
  if (static_cast<int>(v.size()) != dim) throw ConfigError("'grid.length' needs one entry per axis");
  for (int a = 0; a < dim; ++a) len[a] = Section::length_value(v[a], "grid.length");
  return len;
}

VelocitySpec parse_velocity(const json& v) {
  Section s(v, "initial_condition.velocity");
  VelocitySpec out;
  out.amplitude = s.number("amplitude", out.amplitude);
  out.wavenumber = s.get<int>("wavenumber", out.wavenumber);
  out.phase = s.number("phase", out.phase);
  out.solenoidal = s.get<bool>("solenoidal", out.solenoidal);
  if (s.has("offset")) {
    const json& o = s.raw("offset");
    if (!o.is_array() || o.empty() || o.size() > 2) throw ConfigError("'velocity.offset' must list 1 or 2 numbers");
    for (std::size_t a = 0; a < o.size(); ++a) out.offset[a] = o[a].get<double>();
  }
  s.finish();
  return out;
}

InitialCondition parse_initial(const json& v) {
  Section s(v, "initial_condition");
  InitialCondition ic;
  ic.family = ic_family_from_string(s.get<std::string>("family", "constant"));
  ic.rho0 = s.number("rho0", ic.rho0);
  ic.amplitude = s.number("amplitude", ic.amplitude);
  ic.wavenumber = s.get<int>("wavenumber", ic.wavenumber);
  ic.wavenumber_y = s.get<int>("wavenumber_y", ic.wavenumber_y);
  ic.phase = s.number("phase", ic.phase);
  ic.width = s.number("width", ic.width);
  ic.center = s.number("center", ic.center);
  ic.max_mode = s.get<int>("max_mode", ic.max_mode);
  if (s.has("velocity")) ic.velocity = parse_velocity(s.raw("velocity"));
  s.finish();
  return ic;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

void RunConfig::validate() const {
  if (grid.dim != 1 && grid.dim != 2) throw ConfigError("grid.dim must be 1 or 2");
  for (int a = 0; a < grid.dim; ++a) {
    if (grid.n[a] < Grid::kMinCells) throw ConfigError("grid.n must be at least 8 per axis");
    if (!(grid.length[a] > 0.0)) throw ConfigError("grid.length must be positive");
  }
  if (grid.boundary == Boundary::BoundedNeumann1D && grid.dim != 1)
    throw ConfigError("the bounded Neumann grid is one-dimensional");
  if (disc.scheme == Scheme::Spectral && grid.boundary != Boundary::Periodic)
    throw ConfigError("Spectral scheme requires a periodic grid");
  params.validate(grid.dim);
  if (model == ModelKind::NSK2 && !mobility) throw ConfigError("model nsk2 requires a mobility section");
  if (mobility) {
    if (!(mobility->mean > 0.0)) throw ConfigError("mobility.mean must be positive");
    if (!(std::abs(mobility->amplitude) < mobility->mean))
      throw ConfigError("mobility must stay positive: |amplitude| < mean");
  }
  steps.validate();
  if (output.snapshot_every < 0 || output.metrics_every < 0) throw ConfigError("output cadences must be >= 0");
  if (!(rho_floor >= 0.0)) throw ConfigError("rho_floor must be non-negative");

  const InitialCondition& ic = initial;
  switch (ic.family) {
    case IcFamily::Constant:
      if (!(ic.rho0 > rho_floor)) throw ConfigError("initial density must exceed rho_floor");
      break;
    case IcFamily::SineDensity:
    case IcFamily::RandomBandLimited:
      if (!(ic.rho0 * (1.0 - std::abs(ic.amplitude)) > rho_floor))
        throw ConfigError("initial density would fall below rho_floor; need |amplitude| < 1");
      break;
    case IcFamily::TanhInterface:
      if (!(ic.width > 0.0)) throw ConfigError("interface width must be positive");
      break;
  }
  if (ic.family == IcFamily::RandomBandLimited && ic.max_mode < 1) throw ConfigError("max_mode must be >= 1");
  if (ic.velocity.wavenumber < 0) throw ConfigError("velocity wavenumber must be non-negative");
  if (grid.boundary != Boundary::Periodic && (ic.velocity.offset[0] != 0.0 || ic.velocity.offset[1] != 0.0))
    throw ConfigError("a uniform velocity offset violates the wall condition on bounded grids");
}

RunConfig parse_config(const json& doc) {
  Section top(doc, "config");
  RunConfig cfg;

  if (!top.has("grid")) throw ConfigError("missing 'grid' section");
  {
    Section g(top.raw("grid"), "grid");
    cfg.grid.dim = g.get<int>("dim", 1);
    if (cfg.grid.dim != 1 && cfg.grid.dim != 2) throw ConfigError("grid.dim must be 1 or 2");
    cfg.grid.boundary = boundary_from_string(g.get<std::string>("boundary", "periodic"));
    if (!g.has("n")) throw ConfigError("missing 'grid.n'");
    cfg.grid.n = read_counts(g.raw("n"), cfg.grid.dim);
    cfg.grid.length = g.has("length") ? read_lengths(g.raw("length"), cfg.grid.dim)
                                      : std::array<double, 2>{2.0 * std::numbers::pi, 2.0 * std::numbers::pi};
    if (cfg.grid.dim == 1) {
      cfg.grid.n[1] = 1;
      cfg.grid.length[1] = 1.0;
    }
    g.finish();
  }

  cfg.disc.scheme = scheme_from_string(top.get<std::string>("scheme", "spectral"));
  cfg.disc.dealias = top.get<bool>("dealias", false);
  cfg.model = model_kind_from_string(top.get<std::string>("model", "nsk1"));
  cfg.seed = top.get<std::uint64_t>("seed", cfg.seed);
  cfg.rho_floor = top.number("rho_floor", cfg.rho_floor);

  if (top.has("params")) {
    Section p(top.raw("params"), "params");
    FluidParams& fp = cfg.params;
    fp.tau1 = p.number("tau1", fp.tau1);
    fp.tau2 = p.number("tau2", fp.tau2);
    fp.theta = p.number("theta", fp.theta);
    fp.delta = p.number("delta", fp.delta);
    fp.mu_shear = p.number("mu_shear", fp.mu_shear);
    fp.lambda = p.number("lambda", fp.lambda);
    fp.gamma = p.number("gamma", fp.gamma);
    fp.density_margin = p.number("density_margin", fp.density_margin);
    cfg.well_scale = p.number("w0", cfg.well_scale);
    fp.c_hat_convention = c_hat_convention_from_string(p.get<std::string>("c_hat_convention", "consistent"));
    p.finish();
  }
  cfg.params.well = BulkPotential::quartic(cfg.well_scale);

  if (top.has("mobility")) {
    Section m(top.raw("mobility"), "mobility");
    MobilitySpec ms;
    const std::string kind = m.get<std::string>("kind", "constant");
    if (kind == "constant") {
      ms.variable = false;
      ms.mean = m.number("value", cfg.params.gamma);
    } else if (kind == "field") {
      ms.variable = true;
      ms.mean = m.number("mean", cfg.params.gamma);
      ms.amplitude = m.number("amplitude", 0.0);
      ms.wavenumber = m.get<int>("wavenumber", 1);
    } else {
      throw ConfigError("mobility.kind must be 'constant' or 'field'");
    }
    m.finish();
    cfg.mobility = ms;
  }

  if (top.has("initial_condition")) cfg.initial = parse_initial(top.raw("initial_condition"));

  if (top.has("step_control")) {
    Section s(top.raw("step_control"), "step_control");
    StepControl& sc = cfg.steps;
    sc.cfl_advective = s.number("cfl_advective", sc.cfl_advective);
    sc.cfl_parabolic = s.number("cfl_parabolic", sc.cfl_parabolic);
    sc.dt_max = s.number("dt_max", sc.dt_max);
    sc.dt_min = s.number("dt_min", sc.dt_min);
    sc.t_end = s.number("t_end", sc.t_end);
    if (s.has("fixed_dt") && !s.raw("fixed_dt").is_null()) sc.fixed_dt = s.number("fixed_dt", 0.0);
    s.finish();
  }

  if (top.has("output")) {
    Section o(top.raw("output"), "output");
    cfg.output.directory = o.get<std::string>("directory", cfg.output.directory);
    cfg.output.snapshot_every = o.get<long>("snapshot_every", cfg.output.snapshot_every);
    cfg.output.metrics_every = o.get<long>("metrics_every", cfg.output.metrics_every);
    o.finish();
  }

  top.finish();
  cfg.initial.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const RunConfig& cfg) {
  json doc;
  const int dim = cfg.grid.dim;
  json n = json::array(), len = json::array();
  for (int a = 0; a < dim; ++a) {
    n.push_back(cfg.grid.n[a]);
    len.push_back(cfg.grid.length[a]);
  }
  doc["grid"] = {{"dim", dim}, {"n", n}, {"length", len}, {"boundary", to_string(cfg.grid.boundary)}};
  doc["scheme"] = to_string(cfg.disc.scheme);
  doc["dealias"] = cfg.disc.dealias;
  const FluidParams& p = cfg.params;
  doc["params"] = {{"tau1", p.tau1},
                   {"tau2", p.tau2},
                   {"theta", p.theta},
                   {"delta", p.delta},
                   {"mu_shear", p.mu_shear},
                   {"lambda", p.lambda},
                   {"gamma", p.gamma},
                   {"w0", cfg.well_scale},
                   {"density_margin", p.density_margin},
                   {"c_hat_convention", to_string(p.c_hat_convention)}};
  if (cfg.mobility) {
    const MobilitySpec& m = *cfg.mobility;
    if (m.variable)
      doc["mobility"] = {{"kind", "field"}, {"mean", m.mean}, {"amplitude", m.amplitude}, {"wavenumber", m.wavenumber}};
    else
      doc["mobility"] = {{"kind", "constant"}, {"value", m.mean}};
  }
  doc["model"] = to_string(cfg.model);
  const InitialCondition& ic = cfg.initial;
  doc["initial_condition"] = {{"family", to_string(ic.family)},
                              {"rho0", ic.rho0},
                              {"amplitude", ic.amplitude},
                              {"wavenumber", ic.wavenumber},
                              {"wavenumber_y", ic.wavenumber_y},
                              {"phase", ic.phase},
                              {"width", ic.width},
                              {"center", ic.center},
                              {"max_mode", ic.max_mode},
                              {"velocity",
                               {{"amplitude", ic.velocity.amplitude},
                                {"wavenumber", ic.velocity.wavenumber},
                                {"phase", ic.velocity.phase},
                                {"solenoidal", ic.velocity.solenoidal},
                                {"offset", {ic.velocity.offset[0], ic.velocity.offset[1]}}}}};
  const StepControl& sc = cfg.steps;
  doc["step_control"] = {{"cfl_advective", sc.cfl_advective},
                         {"cfl_parabolic", sc.cfl_parabolic},
                         {"dt_max", sc.dt_max},
                         {"dt_min", sc.dt_min},
                         {"t_end", sc.t_end}};
  doc["step_control"]["fixed_dt"] = sc.fixed_dt ? json(*sc.fixed_dt) : json(nullptr);
  doc["output"] = {{"directory", cfg.output.directory},
                   {"snapshot_every", cfg.output.snapshot_every},
                   {"metrics_every", cfg.output.metrics_every}};
  doc["seed"] = cfg.seed;
  doc["rho_floor"] = cfg.rho_floor;
  return doc;
}

std::string config_hash(const RunConfig& cfg) {
  json canonical = to_json(cfg);
  // Where results go does not change what they are.
  canonical["output"].erase("directory");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical.dump())));
  return buf;
}

Grid make_grid(const RunConfig& cfg) {
  return Grid(cfg.grid.dim, cfg.grid.n, cfg.grid.length, cfg.grid.boundary);
}

Grid make_grid(const RunConfig& cfg, int n) { return make_grid(cfg).with_cells(n); }

Mobility make_mobility(const MobilitySpec& spec, const Grid& grid) {
  if (!spec.variable) return Mobility::constant(spec.mean);
  const double k = 2.0 * std::numbers::pi * spec.wavenumber / grid.length(0);
  return Mobility::field(
      ScalarField::sample(grid, [&](double x, double) { return spec.mean + spec.amplitude * std::sin(k * x); }));
}

ModelSetup make_setup(const RunConfig& cfg, const Grid& grid) {
  ModelSetup s;
  s.params = cfg.params;
  s.disc = cfg.disc;
  s.kind = cfg.model;
  if (cfg.mobility) s.mobility = make_mobility(*cfg.mobility, grid);
  s.rho_floor = cfg.rho_floor;
  s.validate(grid);
  return s;
}

InitialField make_initial_field(const RunConfig& cfg, const Grid& grid) {
  return InitialField(cfg.initial, grid, cfg.params);
}

}  // namespace nsk::harness
