#include "ibstring/config.hpp"

#include "ibstring/errors.hpp"
#include "ibstring/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace ibstring {

namespace {

using json = nlohmann::json;

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string type_name(const json& v) { return v.type_name(); }

// Typed, path-aware accessors over one JSON object.
class Fields {
 public:
  Fields(const json& obj, std::string path, std::initializer_list<const char*> allowed)
      : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw ConfigError(path_, "expected an object, got " + type_name(obj_));
    }
    std::set<std::string> known(allowed.begin(), allowed.end());
    for (const auto& item : obj_.items()) {
      if (!known.count(item.key())) throw ConfigError(join(path_, item.key()), "unknown key");
    }
  }

  bool has(const char* key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }
  const json& raw(const char* key) const { return obj_.at(key); }
  std::string path(const char* key) const { return join(path_, key); }

  double number(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    return number_at(obj_.at(key), path(key));
  }

  double required_number(const char* key) const {
    if (!has(key)) throw ConfigError(path(key), "required");
    return number_at(obj_.at(key), path(key));
  }

  std::size_t count(const char* key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<long long>() < 0)) {
      throw ConfigError(path(key), "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
  }

  int integer(const char* key) const {
    if (!has(key)) throw ConfigError(path(key), "required");
    const json& v = obj_.at(key);
    if (!v.is_number_integer()) throw ConfigError(path(key), "expected an integer");
    return v.get<int>();
  }

  std::string string(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_string()) throw ConfigError(path(key), "expected a string");
    return v.get<std::string>();
  }

  Vec2 vec2(const char* key, const Vec2& fallback) const {
    if (!has(key)) return fallback;
    const json& v = obj_.at(key);
    if (!v.is_array() || v.size() != 2) throw ConfigError(path(key), "expected [x, y]");
    return Vec2(number_at(v[0], path(key) + "[0]"), number_at(v[1], path(key) + "[1]"));
  }

 private:
  static double number_at(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where, "expected a number, got " + type_name(v));
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(where, "must be finite");
    return d;
  }

  const json& obj_;
  std::string path_;
};

void require_positive(double v, const std::string& where) {
  if (!(v > 0.0)) throw ConfigError(where, "must be positive");
}

InitialCondition parse_initial(const json& node) {
  const std::string base = "initial";
  if (!node.is_object() || !node.contains("type") || !node.at("type").is_string()) {
    throw ConfigError(join(base, "type"), "required string: circle, perturbed_circle, "
                                          "reparam_circle or file");
  }
  const std::string type = node.at("type").get<std::string>();
  if (type == "circle") {
    Fields f(node, base, {"type", "radius", "theta", "center"});
    CircleInit c;
    c.radius = f.number("radius", 1.0);
    require_positive(c.radius, f.path("radius"));
    c.theta = f.number("theta", 0.0);
    c.center = f.vec2("center", Vec2::Zero());
    return c;
  }
  if (type == "perturbed_circle") {
    Fields f(node, base, {"type", "radius", "modes"});
    PerturbedCircleInit p;
    p.radius = f.number("radius", 1.0);
    require_positive(p.radius, f.path("radius"));
    if (f.has("modes")) {
      const json& modes = f.raw("modes");
      if (!modes.is_array()) throw ConfigError(f.path("modes"), "expected an array");
      for (std::size_t i = 0; i < modes.size(); ++i) {
        const std::string mpath = f.path("modes") + "[" + std::to_string(i) + "]";
        Fields m(modes[i], mpath, {"k", "amplitude", "phase"});
        PerturbationMode mode;
        mode.k = m.integer("k");
        if (mode.k < 0) throw ConfigError(m.path("k"), "must be nonnegative");
        mode.amplitude = m.vec2("amplitude", Vec2::Zero());
        mode.phase = m.vec2("phase", Vec2::Zero());
        p.modes.push_back(mode);
      }
    }
    return p;
  }
  if (type == "reparam_circle") {
    Fields f(node, base, {"type", "radius", "beta"});
    ReparamCircleInit r;
    r.radius = f.number("radius", 1.0);
    require_positive(r.radius, f.path("radius"));
    r.beta = f.number("beta", 0.0);
    if (!(std::abs(r.beta) < 1.0)) throw ConfigError(f.path("beta"), "must satisfy |beta| < 1");
    return r;
  }
  if (type == "file") {
    Fields f(node, base, {"type", "path"});
    FileInit fi;
    fi.path = f.string("path", "");
    if (fi.path.empty()) throw ConfigError(f.path("path"), "required");
    return fi;
  }
  throw ConfigError(join(base, "type"), "unknown initial type '" + type + "'");
}

FieldGrid parse_field_grid(const json& node) {
  Fields f(node, "field_grid", {"xmin", "xmax", "ymin", "ymax", "nx", "ny"});
  FieldGrid g;
  g.xmin = f.required_number("xmin");
  g.xmax = f.required_number("xmax");
  g.ymin = f.required_number("ymin");
  g.ymax = f.required_number("ymax");
  g.nx = f.count("nx", g.nx);
  g.ny = f.count("ny", g.ny);
  if (!(g.xmax > g.xmin)) throw ConfigError(f.path("xmax"), "must exceed xmin");
  if (!(g.ymax > g.ymin)) throw ConfigError(f.path("ymax"), "must exceed ymin");
  if (g.nx < 1) throw ConfigError(f.path("nx"), "must be at least 1");
  if (g.ny < 1) throw ConfigError(f.path("ny"), "must be at least 1");
  return g;
}

json vec_json(const Vec2& v) { return json::array({v.x(), v.y()}); }

}  // namespace

StepperConfig RunConfig::stepper() const {
  StepperConfig s;
  s.scheme = scheme;
  s.dt = dt;
  s.t_end = t_end;
  s.dealias.cutoff_fraction = cutoff_fraction;
  s.dealias.krasny_floor = krasny_floor;
  switch (dealias) {
    case DealiasMode::automatic: s.dealias.enabled = DealiasConfig::automatic(t_end).enabled; break;
    case DealiasMode::on: s.dealias.enabled = true; break;
    case DealiasMode::off: s.dealias.enabled = false; break;
  }
  s.lambda_abort = lambda_abort;
  s.snapshot_every = snapshot_every;
  return s;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }

  Fields f(doc, "",
           {"grid_n", "scheme", "dt", "t_end", "dealias", "lambda_abort", "snapshot_every",
            "output_dir", "initial", "field_grid"});
  RunConfig cfg;

  cfg.grid_n = f.count("grid_n", cfg.grid_n);
  try {
    require_grid_size(cfg.grid_n);
  } catch (const InvalidArgument& e) {
    throw ConfigError("grid_n", e.what());
  }

  const std::string scheme = f.string("scheme", "exp_euler");
  if (scheme == "rk4") {
    cfg.scheme = Scheme::rk4;
  } else if (scheme == "exp_euler") {
    cfg.scheme = Scheme::exp_euler;
  } else {
    throw ConfigError("scheme", "expected 'rk4' or 'exp_euler', got '" + scheme + "'");
  }

  cfg.dt = f.number("dt", cfg.dt);
  require_positive(cfg.dt, "dt");
  cfg.t_end = f.number("t_end", cfg.t_end);
  require_positive(cfg.t_end, "t_end");
  if (cfg.dt > cfg.t_end) throw ConfigError("dt", "must not exceed t_end");

  if (f.has("dealias")) {
    const json& d = f.raw("dealias");
    if (d.is_boolean()) {
      cfg.dealias = d.get<bool>() ? DealiasMode::on : DealiasMode::off;
    } else if (d.is_string() && d.get<std::string>() == "auto") {
      cfg.dealias = DealiasMode::automatic;
    } else if (d.is_object()) {
      Fields df(d, "dealias", {"enabled", "cutoff_fraction", "krasny_floor"});
      if (df.has("enabled")) {
        const json& e = df.raw("enabled");
        if (e.is_boolean()) {
          cfg.dealias = e.get<bool>() ? DealiasMode::on : DealiasMode::off;
        } else if (e.is_string() && e.get<std::string>() == "auto") {
          cfg.dealias = DealiasMode::automatic;
        } else {
          throw ConfigError(df.path("enabled"), "expected true, false or \"auto\"");
        }
      }
      cfg.cutoff_fraction = df.number("cutoff_fraction", cfg.cutoff_fraction);
      if (!(cfg.cutoff_fraction > 0.0 && cfg.cutoff_fraction <= 1.0)) {
        throw ConfigError(df.path("cutoff_fraction"), "must lie in (0, 1]");
      }
      cfg.krasny_floor = df.number("krasny_floor", cfg.krasny_floor);
      if (!(cfg.krasny_floor >= 0.0)) {
        throw ConfigError(df.path("krasny_floor"), "must be nonnegative");
      }
    } else {
      throw ConfigError("dealias", "expected true, false, \"auto\" or an object");
    }
  }

  if (f.has("lambda_abort")) {
    cfg.lambda_abort = f.number("lambda_abort", 0.0);
    require_positive(*cfg.lambda_abort, "lambda_abort");
  }

  cfg.snapshot_every = f.count("snapshot_every", cfg.snapshot_every);
  cfg.output_dir = f.string("output_dir", cfg.output_dir);
  if (cfg.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");

  if (!f.has("initial")) throw ConfigError("initial", "required");
  cfg.initial = parse_initial(f.raw("initial"));
  if (f.has("field_grid")) cfg.field_grid = parse_field_grid(f.raw("field_grid"));

  build_initial(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config " + file.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string emit_config(const RunConfig& cfg) {
  json doc;
  doc["grid_n"] = cfg.grid_n;
  doc["scheme"] = cfg.scheme == Scheme::rk4 ? "rk4" : "exp_euler";
  doc["dt"] = cfg.dt;
  doc["t_end"] = cfg.t_end;
  json d;
  switch (cfg.dealias) {
    case DealiasMode::automatic: d["enabled"] = "auto"; break;
    case DealiasMode::on: d["enabled"] = true; break;
    case DealiasMode::off: d["enabled"] = false; break;
  }
  d["cutoff_fraction"] = cfg.cutoff_fraction;
  d["krasny_floor"] = cfg.krasny_floor;
  doc["dealias"] = d;
  doc["lambda_abort"] = cfg.lambda_abort ? json(*cfg.lambda_abort) : json(nullptr);
  doc["snapshot_every"] = cfg.snapshot_every;
  doc["output_dir"] = cfg.output_dir;

  json init = std::visit(
      [](const auto& ic) -> json {
        using T = std::decay_t<decltype(ic)>;
        if constexpr (std::is_same_v<T, CircleInit>) {
          return {{"type", "circle"}, {"radius", ic.radius}, {"theta", ic.theta},
                  {"center", vec_json(ic.center)}};
        } else if constexpr (std::is_same_v<T, PerturbedCircleInit>) {
          json modes = json::array();
          for (const auto& m : ic.modes) {
            modes.push_back({{"k", m.k}, {"amplitude", vec_json(m.amplitude)},
                             {"phase", vec_json(m.phase)}});
          }
          return {{"type", "perturbed_circle"}, {"radius", ic.radius}, {"modes", modes}};
        } else if constexpr (std::is_same_v<T, ReparamCircleInit>) {
          return {{"type", "reparam_circle"}, {"radius", ic.radius}, {"beta", ic.beta}};
        } else {
          return {{"type", "file"}, {"path", ic.path}};
        }
      },
      cfg.initial);
  doc["initial"] = init;

  if (cfg.field_grid) {
    const FieldGrid& g = *cfg.field_grid;
    doc["field_grid"] = {{"xmin", g.xmin}, {"xmax", g.xmax}, {"ymin", g.ymin},
                         {"ymax", g.ymax}, {"nx", g.nx},     {"ny", g.ny}};
  }
  return doc.dump(2) + "\n";
}

CurveState build_initial(const RunConfig& cfg) {
  const std::size_t n = cfg.grid_n;
  CurveState X = std::visit(
      [n](const auto& ic) -> CurveState {
        using T = std::decay_t<decltype(ic)>;
        if constexpr (std::is_same_v<T, CircleInit>) {
          return make_circle(n, ic.radius, ic.theta, ic.center);
        } else if constexpr (std::is_same_v<T, PerturbedCircleInit>) {
          return make_perturbed_circle(n, ic.radius, ic.modes);
        } else if constexpr (std::is_same_v<T, ReparamCircleInit>) {
          return make_reparam_circle(n, ic.radius, ic.beta);
        } else {
          CurveState loaded;
          try {
            loaded = read_snapshot(std::filesystem::path(ic.path));
          } catch (const IoError& e) {
            throw ConfigError("initial.path", e.what());
          }
          if (loaded.size() != n) {
            throw ConfigError("initial.path", "snapshot has N=" + std::to_string(loaded.size()) +
                                                  " but grid_n is " + std::to_string(n));
          }
          return loaded;
        }
      },
      cfg.initial);

  const double lambda = well_stretched_constant(X);
  if (is_degenerate(lambda)) {
    throw ConfigError("initial", "curve is not well-stretched (lambda = " +
                                     format_double(lambda) + ")");
  }
  try {
    enclosed_area(X);
  } catch (const OrientationError& e) {
    throw ConfigError("initial", e.what());
  }
  return X;
}

}  // namespace ibstring
