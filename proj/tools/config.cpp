#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gfix::cli {

using nlohmann::json;

namespace {

// Every JSON access goes through these so type errors surface as ConfigError with a path.
void allow_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> ok(keys.begin(), keys.end());
  for (const auto& [k, _] : j.items()) {
    if (!ok.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
  }
}

const json& need(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(where + " is missing '" + key + "'");
  return j.at(key);
}

double as_double(const json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + " must be a number");
  return v.get<double>();
}

std::size_t as_size(const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError(where + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + " must be a string");
  return v.get<std::string>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw ConfigError(where + " must be true or false");
  return v.get<bool>();
}

// A number or an array of numbers.
std::vector<double> as_doubles(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(where + " must be a number or an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_double(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::size_t> as_sizes(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + " must be an array of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_size(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> as_strings(const json& v, const std::string& where) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) throw ConfigError(where + " must be a string or an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_string(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw ConfigError("cannot open '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& ref) {
  const std::filesystem::path p(ref);
  return p.is_absolute() ? p : base / p;
}

std::array<double, 2> pair_of(const json& v, const std::string& where) {
  const auto d = as_doubles(v, where);
  if (d.size() != 2) throw ConfigError(where + " must hold two numbers");
  return {d[0], d[1]};
}

Domain parse_domain(const json& j) {
  const std::string w = "space.domain";
  allow_keys(j, w, {"kind", "lo", "hi", "count"});
  const std::string kind = as_string(need(j, w, "kind"), w + ".kind");
  if (kind == "interval") {
    return Domain::interval(as_double(need(j, w, "lo"), w + ".lo"), as_double(need(j, w, "hi"), w + ".hi"));
  }
  if (kind == "box") return Domain::box(pair_of(need(j, w, "lo"), w + ".lo"), pair_of(need(j, w, "hi"), w + ".hi"));
  if (kind == "grid") {
    const json& lo = need(j, w, "lo");
    if (lo.is_array()) {
      const auto c = as_sizes(need(j, w, "count"), w + ".count");
      if (c.size() != 2) throw ConfigError(w + ".count must hold two integers for a 2-D grid");
      return Domain::grid2d(pair_of(lo, w + ".lo"), pair_of(need(j, w, "hi"), w + ".hi"), {c[0], c[1]});
    }
    return Domain::grid(as_double(lo, w + ".lo"), as_double(need(j, w, "hi"), w + ".hi"),
                        as_size(need(j, w, "count"), w + ".count"));
  }
  throw ConfigError(w + ".kind must be interval, box or grid, got '" + kind + "'");
}

TablePayload parse_table_json(const json& j, const std::string& w) {
  allow_keys(j, w, {"n", "values"});
  TablePayload t;
  t.n = as_size(need(j, w, "n"), w + ".n");
  t.values = as_doubles(need(j, w, "values"), w + ".values");
  return t;
}

SpaceRecipe parse_space(const json& j, const std::filesystem::path& base) {
  const std::string w = "space";
  allow_keys(j, w, {"kind", "metric", "domain", "n", "table", "table_file", "verify_metric", "verify_samples"});
  SpaceRecipe r;
  const std::string kind = as_string(need(j, w, "kind"), w + ".kind");
  if (kind == "perimeter" || kind == "max") {
    r.kind = kind == "perimeter" ? SpaceKind::Perimeter : SpaceKind::Max;
    if (j.contains("metric")) r.metric = as_string(j["metric"], w + ".metric");
    r.domain = parse_domain(need(j, w, "domain"));
    if (j.contains("verify_metric")) r.verify_metric = as_bool(j["verify_metric"], w + ".verify_metric");
    if (j.contains("verify_samples")) r.verify_samples = as_size(j["verify_samples"], w + ".verify_samples");
  } else if (kind == "discrete") {
    r.kind = SpaceKind::Discrete;
    r.point_count = as_size(need(j, w, "n"), w + ".n");
  } else if (kind == "table") {
    r.kind = SpaceKind::Table;
    if (j.contains("table") == j.contains("table_file")) {
      throw ConfigError("space of kind table needs exactly one of 'table' and 'table_file'");
    }
    if (j.contains("table")) {
      r.table = parse_table_json(j["table"], w + ".table");
    } else {
      r.table = read_table_file(resolve(base, as_string(j["table_file"], w + ".table_file")).string());
    }
  } else {
    throw ConfigError("space.kind must be perimeter, max, discrete or table, got '" + kind + "'");
  }
  return r;
}

MapSpec parse_map(const json& j, const std::string& w) {
  allow_keys(j, w, {"kind", "value", "index", "a", "b", "images", "expr"});
  MapSpec m;
  const std::string kind = as_string(need(j, w, "kind"), w + ".kind");
  if (kind == "constant") {
    m.kind = MapKind::Constant;
    if (j.contains("index") == j.contains("value")) throw ConfigError(w + " needs exactly one of 'value' and 'index'");
    if (j.contains("index")) {
      m.constant_index = as_size(j["index"], w + ".index");
    } else {
      m.constant = as_doubles(j["value"], w + ".value");
    }
  } else if (kind == "affine") {
    m.kind = MapKind::Affine;
    m.a = as_double(need(j, w, "a"), w + ".a");
    m.b = as_doubles(need(j, w, "b"), w + ".b");
  } else if (kind == "table") {
    m.kind = MapKind::Table;
    m.table = as_sizes(need(j, w, "images"), w + ".images");
  } else if (kind == "expression") {
    m.kind = MapKind::Expression;
    m.expressions = as_strings(need(j, w, "expr"), w + ".expr");
  } else {
    throw ConfigError(w + ".kind must be constant, affine, table or expression, got '" + kind + "'");
  }
  return m;
}

SequenceSpec parse_sequence(const json& j, const std::string& w, const std::filesystem::path& base) {
  allow_keys(j, w, {"kind", "value", "ratio", "values", "file", "expr"});
  SequenceSpec s;
  s.kind = as_string(need(j, w, "kind"), w + ".kind");
  if (s.kind == "constant") {
    s.value = as_double(need(j, w, "value"), w + ".value");
  } else if (s.kind == "geometric") {
    s.ratio = as_double(need(j, w, "ratio"), w + ".ratio");
  } else if (s.kind == "values") {
    if (j.contains("values") == j.contains("file")) throw ConfigError(w + " needs exactly one of 'values' and 'file'");
    if (j.contains("values")) {
      s.values = as_doubles(j["values"], w + ".values");
    } else {
      s.values = read_sequence_file(resolve(base, as_string(j["file"], w + ".file")).string());
    }
    if (s.values.empty()) throw ConfigError(w + " holds no values");
  } else if (s.kind == "expression") {
    s.expr = as_string(need(j, w, "expr"), w + ".expr");
  } else if (s.kind != "harmonic" && s.kind != "inverse-square") {
    throw ConfigError(w + ".kind must be constant, harmonic, inverse-square, geometric, values or expression");
  }
  return s;
}

MapsConfig parse_maps(const json& j) {
  const std::string w = "maps";
  allow_keys(j, w, {"mode", "map", "maps", "expression", "cycle"});
  MapsConfig m;
  const std::string mode = as_string(need(j, w, "mode"), w + ".mode");
  if (mode == "single") {
    m.mode = MapsMode::Single;
    m.maps.push_back(parse_map(need(j, w, "map"), w + ".map"));
  } else if (mode == "triplet") {
    m.mode = MapsMode::Triplet;
    const json& arr = need(j, w, "maps");
    if (!arr.is_array() || arr.size() != 3) throw ConfigError("maps.maps must list exactly three maps for a triplet");
    for (std::size_t i = 0; i < 3; ++i) m.maps.push_back(parse_map(arr[i], w + ".maps[" + std::to_string(i) + "]"));
  } else if (mode == "family") {
    m.mode = MapsMode::Family;
    if (j.contains("expression") == j.contains("cycle")) {
      throw ConfigError("a family needs exactly one of 'expression' and 'cycle'");
    }
    if (j.contains("expression")) {
      m.family_expressions = as_strings(j["expression"], w + ".expression");
    } else {
      const json& arr = j["cycle"];
      if (!arr.is_array() || arr.empty()) throw ConfigError("maps.cycle must be a nonempty array of maps");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        m.family_cycle.push_back(parse_map(arr[i], w + ".cycle[" + std::to_string(i) + "]"));
      }
    }
  } else {
    throw ConfigError("maps.mode must be single, triplet or family, got '" + mode + "'");
  }
  return m;
}

ConditionConfig parse_condition(const json& j, const std::filesystem::path& base) {
  const std::string w = "condition";
  allow_keys(j, w, {"variant", "k", "p", "lambda", "coefficients", "index_horizon", "coefficient_horizon"});
  ConditionConfig c;
  const std::string name = as_string(need(j, w, "variant"), w + ".variant");
  const auto v = parse_variant(name);
  if (!v) throw ConfigError("unknown condition variant '" + name + "'");
  c.variant = *v;
  if (j.contains("k")) c.k = as_size(j["k"], w + ".k");
  if (j.contains("p")) c.p = as_size(j["p"], w + ".p");
  if (j.contains("lambda")) c.lambda = as_double(j["lambda"], w + ".lambda");
  if (j.contains("coefficients")) c.coefficients = parse_sequence(j["coefficients"], w + ".coefficients", base);
  if (j.contains("index_horizon")) c.index_horizon = as_size(j["index_horizon"], w + ".index_horizon");
  if (j.contains("coefficient_horizon")) {
    c.coefficient_horizon = as_size(j["coefficient_horizon"], w + ".coefficient_horizon");
  }
  if (c.variant == Variant::FamilyCoeff && !c.coefficients) throw ConfigError("FamilyCoeff needs condition.coefficients");
  if (c.index_horizon < 1) throw ConfigError("condition.index_horizon must be at least 1");
  return c;
}

SolverConfig parse_solver(const json& j) {
  const std::string w = "solver";
  allow_keys(j, w, {"x0", "x0_index", "p", "probes"});
  SolverConfig s;
  if (j.contains("x0") == j.contains("x0_index")) throw ConfigError("solver needs exactly one of 'x0' and 'x0_index'");
  if (j.contains("x0")) s.x0 = as_doubles(j["x0"], w + ".x0");
  if (j.contains("x0_index")) s.x0_index = as_size(j["x0_index"], w + ".x0_index");
  if (j.contains("p")) s.p = as_size(j["p"], w + ".p");
  if (s.p < 1) throw ConfigError("solver.p must be at least 1");
  if (j.contains("probes")) s.probes = as_sizes(j["probes"], w + ".probes");
  return s;
}

SeriesConfig parse_series(const json& j, const std::filesystem::path& base) {
  const std::string w = "series";
  allow_keys(j, w, {"kind", "sequence", "horizon"});
  SeriesConfig s;
  const std::string kind = as_string(need(j, w, "kind"), w + ".kind");
  if (kind == "alpha-series") {
    s.mode = SeriesMode::Alpha;
  } else if (kind == "lambda-sequence") {
    s.mode = SeriesMode::Lambda;
  } else if (kind == "limsup") {
    s.mode = SeriesMode::Limsup;
  } else {
    throw ConfigError("series.kind must be alpha-series, lambda-sequence or limsup, got '" + kind + "'");
  }
  s.sequence = parse_sequence(need(j, w, "sequence"), w + ".sequence", base);
  if (j.contains("horizon")) s.horizon = as_size(j["horizon"], w + ".horizon");
  return s;
}

}  // namespace

Sequence build_sequence(const SequenceSpec& spec) {
  if (spec.kind == "constant") return sequences::constant(spec.value);
  if (spec.kind == "harmonic") return sequences::harmonic();
  if (spec.kind == "inverse-square") return sequences::inverse_square();
  if (spec.kind == "geometric") return sequences::geometric(spec.ratio);
  if (spec.kind == "values") return sequences::from_values(spec.values);
  if (spec.kind == "expression") {
    const Expr e = parse_expression(spec.expr, {"i"});
    return [e](std::size_t i) { return e.evaluate({static_cast<double>(i)}); };
  }
  throw ConfigError("unknown sequence kind '" + spec.kind + "'");
}

MapSet build_maps(const MapsConfig& cfg) {
  switch (cfg.mode) {
    case MapsMode::Single: return MapSet::single(build_map(cfg.maps.at(0)));
    case MapsMode::Triplet:
      return MapSet::triplet(build_map(cfg.maps.at(0)), build_map(cfg.maps.at(1)), build_map(cfg.maps.at(2)));
    case MapsMode::Family:
      if (!cfg.family_expressions.empty()) return MapSet::of_family(MapFamily::expression(cfg.family_expressions));
      {
        std::vector<Map> cycle;
        for (const auto& m : cfg.family_cycle) cycle.push_back(build_map(m));
        return MapSet::of_family(MapFamily::cycle(std::move(cycle)));
      }
  }
  throw ConfigError("unknown maps mode");
}

Condition build_condition(const ConditionConfig& cfg) {
  Condition c;
  c.variant = cfg.variant;
  c.k = cfg.k;
  c.p = cfg.p;
  c.lambda = cfg.lambda;
  if (cfg.coefficients) {
    if (cfg.coefficients->kind == "expression") {
      const Expr e = parse_expression(cfg.coefficients->expr, {"i", "j", "l"});
      c.delta = [e](std::size_t i, std::size_t j, std::size_t l) {
        return e.evaluate({static_cast<double>(i), static_cast<double>(j), static_cast<double>(l)});
      };
    } else {
      const Sequence s = build_sequence(*cfg.coefficients);
      c.delta = [s](std::size_t i, std::size_t, std::size_t) { return s(i); };
    }
  }
  c.validate();
  return c;
}

Sequence coefficient_sequence(const ConditionConfig& cfg) {
  const Condition c = build_condition(cfg);
  return [c](std::size_t i) { return c.r(i); };
}

ProblemConfig parse_config_text(const std::string& text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  allow_keys(j, "config", {"space", "tolerance", "samples", "maps", "condition", "solver", "series"});
  ProblemConfig cfg;
  try {
    if (j.contains("tolerance")) {
      const json& t = j["tolerance"];
      allow_keys(t, "tolerance", {"abs_tol", "rel_tol", "max_iterations"});
      if (t.contains("abs_tol")) cfg.tolerance.abs_tol = as_double(t["abs_tol"], "tolerance.abs_tol");
      if (t.contains("rel_tol")) cfg.tolerance.rel_tol = as_double(t["rel_tol"], "tolerance.rel_tol");
      if (t.contains("max_iterations")) {
        cfg.tolerance.max_iterations = as_size(t["max_iterations"], "tolerance.max_iterations");
      }
    }
    if (j.contains("samples")) cfg.samples = as_size(j["samples"], "samples");
    if (j.contains("space")) cfg.space = parse_space(j["space"], base_dir);
    else if (j.contains("maps") || j.contains("condition") || j.contains("solver")) {
      throw ConfigError("config is missing 'space'");
    }
    if (j.contains("maps")) cfg.maps = parse_maps(j["maps"]);
    if (j.contains("condition")) cfg.condition = parse_condition(j["condition"], base_dir);
    if (j.contains("solver")) cfg.solver = parse_solver(j["solver"]);
    if (j.contains("series")) cfg.series = parse_series(j["series"], base_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (cfg.condition && cfg.maps) {
    Condition probe;
    probe.variant = cfg.condition->variant;
    const bool family_cond = probe.is_family();
    const std::size_t arity = probe.map_arity();
    const auto mode = cfg.maps->mode;
    if (family_cond != (mode == MapsMode::Family) ||
        (!family_cond && arity != (mode == MapsMode::Triplet ? 3u : 1u))) {
      throw ConfigError(std::string("condition ") + std::string(variant_name(cfg.condition->variant)) +
                        " does not match the supplied maps");
    }
  }
  // Build once so bad expressions and coefficient sources fail at load time.
  try {
    if (cfg.maps) (void)build_maps(*cfg.maps);
    if (cfg.condition) (void)build_condition(*cfg.condition);
    if (cfg.series) (void)build_sequence(cfg.series->sequence);
  } catch (const SyntaxError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const InputError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
  return parse_config_text(read_file(path), path.parent_path());
}

void apply_tolerance_env(Tolerance& tol) {
  auto read = [](const char* name, double& target) {
    const char* v = std::getenv(name);
    if (!v || !*v) return;
    char* end = nullptr;
    const double d = std::strtod(v, &end);
    if (end == v || *end != '\0') throw ConfigError(std::string(name) + " is not a number: '" + v + "'");
    target = d;
  };
  read("GFIX_ABS_TOL", tol.abs_tol);
  read("GFIX_REL_TOL", tol.rel_tol);
  try {
    tol.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("tolerance: ") + e.what());
  }
}

Point build_x0(const SolverConfig& cfg) {
  if (cfg.x0_index) return Point::index(*cfg.x0_index);
  return Point::from_coords(cfg.x0);
}

}  // namespace gfix::cli
