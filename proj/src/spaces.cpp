#include "gfix/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace gfix {

BaseMetric::BaseMetric(std::string name, Function fn, std::size_t dim)
    : name_(std::move(name)), fn_(std::move(fn)), dim_(dim) {
  if (!fn_) throw ConfigError("base metric '" + name_ + "' has no function");
}

BaseMetric BaseMetric::absolute() {
  return BaseMetric("absolute", [](const Point& a, const Point& b) { return std::abs(a[0] - b[0]); }, 1);
}

BaseMetric BaseMetric::euclidean() {
  return BaseMetric("euclidean", [](const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      const double d = a[i] - b[i];
      s += d * d;
    }
    return std::sqrt(s);
  });
}

BaseMetric BaseMetric::expression(const std::string& source) {
  Expr e = parse_expression(source, {"x", "y"});
  return BaseMetric(source, [e](const Point& a, const Point& b) { return e.evaluate({a[0], b[0]}); }, 1);
}

double BaseMetric::operator()(const Point& a, const Point& b) const {
  if (a.indexed() || b.indexed() || a.dim() != b.dim() || (dim_ != 0 && a.dim() != dim_)) {
    throw DomainError("metric '" + name_ + "' cannot compare " + a.to_string() + " and " + b.to_string());
  }
  return fn_(a, b);
}

namespace {

void check_metric_domain(const BaseMetric& metric, const Domain& domain) {
  if (domain.indexed()) throw ConfigError("base metric '" + metric.name() + "' needs a real carrier");
  if (metric.dim() != 0 && metric.dim() != domain.dim()) {
    throw ConfigError("base metric '" + metric.name() + "' is defined on dimension " +
                      std::to_string(metric.dim()) + " but the carrier has dimension " +
                      std::to_string(domain.dim()));
  }
}

}  // namespace

GSpace build_perimeter(const BaseMetric& metric, const Domain& domain, Tolerance tol) {
  check_metric_domain(metric, domain);
  return GSpace(
      "perimeter(" + metric.name() + ")", domain,
      [metric](const Point& x, const Point& y, const Point& z) { return metric(x, y) + metric(y, z) + metric(x, z); },
      tol, true);
}

GSpace build_max(const BaseMetric& metric, const Domain& domain, Tolerance tol) {
  check_metric_domain(metric, domain);
  return GSpace(
      "max(" + metric.name() + ")", domain,
      [metric](const Point& x, const Point& y, const Point& z) {
        return std::max({metric(x, y), metric(y, z), metric(x, z)});
      },
      tol, true);
}

GSpace build_discrete(std::size_t point_count, Tolerance tol) {
  if (point_count == 0) throw ConfigError("discrete space needs point_count >= 1");
  return GSpace(
      "discrete(" + std::to_string(point_count) + ")", Domain::finite(point_count),
      [](const Point& x, const Point& y, const Point& z) {
        return x.index() == y.index() && y.index() == z.index() ? 0.0 : 1.0;
      },
      tol, true);
}

GSpace load_table(const TablePayload& table, Tolerance tol) {
  if (table.n == 0) throw ConfigError("table must declare at least one point");
  const std::size_t expected = table.n * table.n * table.n;
  if (table.values.size() != expected) {
    throw ConfigError("table declares n=" + std::to_string(table.n) + " and needs " + std::to_string(expected) +
                      " values, got " + std::to_string(table.values.size()));
  }
  for (std::size_t i = 0; i < expected; ++i) {
    const double v = table.values[i];
    if (!std::isfinite(v)) throw ConfigError("table entry " + std::to_string(i) + " is not finite");
    if (v < 0.0) throw ConfigError("table entry " + std::to_string(i) + " is negative");
  }
  auto shared = std::make_shared<const TablePayload>(table);
  return GSpace(
      "table(" + std::to_string(table.n) + ")", Domain::finite(table.n),
      [shared](const Point& x, const Point& y, const Point& z) {
        return shared->at(x.index(), y.index(), z.index());
      },
      tol);
}

TablePayload parse_table_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("table file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("values")) {
    throw ConfigError("table file needs fields 'n' and 'values'");
  }
  if (!j["n"].is_number_unsigned()) throw ConfigError("table field 'n' must be a positive integer");
  if (!j["values"].is_array()) throw ConfigError("table field 'values' must be an array");
  TablePayload t;
  t.n = j["n"].get<std::size_t>();
  for (const auto& v : j["values"]) {
    if (!v.is_number()) throw ConfigError("table values must be numbers");
    t.values.push_back(v.get<double>());
  }
  return t;
}

TablePayload read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_table_text(ss.str());
}

std::string table_to_text(const TablePayload& table) {
  nlohmann::json j;
  j["n"] = table.n;
  j["values"] = table.values;
  return j.dump();
}

TablePayload tabulate(const GSpace& space) {
  const auto& d = space.domain();
  if (!d.enumerable()) throw ConfigError("only enumerable spaces can be tabulated");
  const auto pts = d.enumerate();
  TablePayload t;
  t.n = pts.size();
  t.values.resize(t.n * t.n * t.n);
  for (std::size_t a = 0; a < t.n; ++a)
    for (std::size_t b = 0; b < t.n; ++b)
      for (std::size_t c = 0; c < t.n; ++c) t.at(a, b, c) = space.g(pts[a], pts[b], pts[c]);
  return t;
}

MetricCheck verify_metric(const BaseMetric& metric, const Domain& domain, std::size_t samples, std::uint64_t seed,
                          Tolerance tol) {
  check_metric_domain(metric, domain);
  std::mt19937_64 rng(seed);
  MetricCheck out;
  auto record = [&](const char* property, double violation, std::vector<Point> witness) {
    if (violation > out.violation) {
      out.ok = false;
      out.failed_property = property;
      out.violation = violation;
      out.witness = std::move(witness);
    }
  };
  for (std::size_t s = 0; s < samples; ++s) {
    const Point x = domain.sample(rng);
    const Point y = domain.sample(rng);
    const Point z = domain.sample(rng);
    const double dxy = metric(x, y);
    const double dyx = metric(y, x);
    const double dxx = metric(x, x);
    if (!std::isfinite(dxy) || dxy < 0.0) record("nonnegativity", std::isfinite(dxy) ? -dxy : HUGE_VAL, {x, y});
    if (dxx > tol.abs_tol) record("identity", dxx, {x});
    if (std::abs(dxy - dyx) > tol.abs_tol) record("symmetry", std::abs(dxy - dyx), {x, y});
    const double lhs = metric(x, z);
    const double rhs = dxy + metric(y, z);
    if (!tol.leq(lhs, rhs)) record("triangle", lhs - rhs, {x, y, z});
    ++out.samples;
  }
  return out;
}

GSpace build_space(const SpaceRecipe& recipe, Tolerance tol) {
  auto metric = [&] {
    if (recipe.metric == "absolute") return BaseMetric::absolute();
    if (recipe.metric == "euclidean") return BaseMetric::euclidean();
    return BaseMetric::expression(recipe.metric);
  };
  switch (recipe.kind) {
    case SpaceKind::Perimeter:
    case SpaceKind::Max: {
      const BaseMetric m = metric();
      if (recipe.verify_metric) {
        const auto check = verify_metric(m, recipe.domain, recipe.verify_samples, recipe.verify_seed, tol);
        if (!check.ok) {
          throw ConfigError("base metric '" + m.name() + "' fails " + check.failed_property + " by " +
                            format_double(check.violation));
        }
      }
      return recipe.kind == SpaceKind::Perimeter ? build_perimeter(m, recipe.domain, tol)
                                                 : build_max(m, recipe.domain, tol);
    }
    case SpaceKind::Discrete:
      return build_discrete(recipe.point_count, tol);
    case SpaceKind::Table:
      return load_table(recipe.table, tol);
  }
  throw ConfigError("unknown space kind");
}

}  // namespace gfix
