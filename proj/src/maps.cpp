#include "gfix/maps.hpp"

#include <random>

namespace gfix {

Map::Map(std::string description, Function fn) : description_(std::move(description)), fn_(std::move(fn)) {
  if (!fn_) throw ConfigError("map '" + description_ + "' has no function");
}

Map Map::constant(Point value) {
  Map m("const " + value.to_string(), [value](const Point&) { return value; });
  m.constant_ = value;
  return m;
}

Map Map::affine(double a, std::vector<double> b) {
  if (b.empty() || b.size() > Point::kMaxDim) throw ConfigError("affine offset must have dimension 1 or 2");
  std::string desc = format_double(a) + "*x + " + Point::from_coords(b).to_string();
  return Map(std::move(desc), [a, b](const Point& x) {
    if (x.indexed() || x.dim() != b.size()) {
      throw DomainError("affine map of dimension " + std::to_string(b.size()) + " applied to " + x.to_string());
    }
    std::array<double, Point::kMaxDim> c{};
    for (std::size_t i = 0; i < b.size(); ++i) c[i] = a * x[i] + b[i];
    return Point::from_coords(std::span<const double>(c.data(), b.size()));
  });
}

Map Map::table(std::vector<std::size_t> images) {
  if (images.empty()) throw ConfigError("map table is empty");
  std::string desc = "table[";
  for (std::size_t i = 0; i < images.size(); ++i) desc += (i ? "," : "") + std::to_string(images[i]);
  desc += "]";
  auto shared = std::make_shared<const std::vector<std::size_t>>(images);
  Map m(std::move(desc), [shared](const Point& x) {
    const std::size_t i = x.index();
    if (i >= shared->size()) throw DomainError("map table has no entry for " + x.to_string());
    return Point::index((*shared)[i]);
  });
  m.table_ = std::move(images);
  bool all_same = true;
  for (auto v : *m.table_) all_same = all_same && v == m.table_->front();
  if (all_same) m.constant_ = Point::index(m.table_->front());
  return m;
}

Map Map::expression(const std::vector<std::string>& sources, std::optional<std::size_t> index) {
  if (sources.empty() || sources.size() > Point::kMaxDim) {
    throw ConfigError("expression maps need one expression per coordinate (1 or 2)");
  }
  std::vector<Expr> exprs;
  std::string desc;
  for (const auto& s : sources) {
    exprs.push_back(parse_expression(s, {"x", "y", "i"}));
    desc += (desc.empty() ? "" : "; ") + s;
  }
  if (index) desc += " [i=" + std::to_string(*index) + "]";
  const double i_value = index ? static_cast<double>(*index) : 0.0;
  const bool has_index = index.has_value();
  return Map(std::move(desc), [exprs, i_value, has_index](const Point& x) {
    if (x.indexed()) throw DomainError("expression maps need real points, got " + x.to_string());
    // y is unbound on 1-D inputs and i outside a family; a family member binds all three.
    const std::array<double, 3> vars{x[0], x.dim() > 1 ? x[1] : 0.0, i_value};
    const std::size_t bound = has_index ? 3 : x.dim();
    std::array<double, Point::kMaxDim> out{};
    for (std::size_t k = 0; k < exprs.size(); ++k) {
      out[k] = exprs[k].evaluate(std::span<const double>(vars.data(), bound));
    }
    return Point::from_coords(std::span<const double>(out.data(), exprs.size()));
  });
}

Map Map::power(std::size_t p) const {
  if (p == 1) return *this;
  Map self = *this;
  Map m(description_ + "^" + std::to_string(p), [self, p](const Point& x) { return iterate(self, x, p); });
  if (p >= 1) m.constant_ = constant_;
  return m;
}

Point iterate(const Map& map, const Point& x, std::size_t p) {
  Point cur = x;
  for (std::size_t i = 0; i < p; ++i) cur = map(cur);
  return cur;
}

MapFamily::MapFamily(std::string description, Generator gen)
    : description_(std::move(description)), gen_(std::move(gen)) {
  if (!gen_) throw ConfigError("map family '" + description_ + "' has no generator");
}

MapFamily MapFamily::repeat(Map map) {
  std::string desc = "repeat(" + map.description() + ")";
  return MapFamily(std::move(desc), [map](std::size_t) { return map; });
}

MapFamily MapFamily::cycle(std::vector<Map> maps) {
  if (maps.empty()) throw ConfigError("cyclic family needs at least one map");
  std::string desc = "cycle(";
  for (std::size_t i = 0; i < maps.size(); ++i) desc += (i ? ", " : "") + maps[i].description();
  desc += ")";
  return MapFamily(std::move(desc), [maps](std::size_t i) { return maps[(i - 1) % maps.size()]; });
}

MapFamily MapFamily::expression(std::vector<std::string> sources) {
  // Parse once up front so syntax errors surface at construction.
  for (const auto& s : sources) parse_expression(s, {"x", "y", "i"});
  std::string desc = "expr(";
  for (std::size_t i = 0; i < sources.size(); ++i) desc += (i ? "; " : "") + sources[i];
  desc += ")";
  return MapFamily(std::move(desc), [sources](std::size_t i) { return Map::expression(sources, i); });
}

Map MapFamily::operator[](std::size_t i) const {
  if (i == 0) throw InputError("family members are indexed from 1");
  return gen_(i);
}

Map build_map(const MapSpec& spec) {
  switch (spec.kind) {
    case MapKind::Constant:
      if (spec.constant_index) return Map::constant(Point::index(*spec.constant_index));
      return Map::constant(Point::from_coords(spec.constant));
    case MapKind::Affine:
      return Map::affine(spec.a, spec.b.empty() ? std::vector<double>{0.0} : spec.b);
    case MapKind::Table:
      return Map::table(spec.table);
    case MapKind::Expression:
      return Map::expression(spec.expressions);
  }
  throw ConfigError("unknown map kind");
}

std::optional<Point> find_domain_escape(const GSpace& space, const Map& map, std::size_t samples,
                                        std::uint64_t seed) {
  const auto& d = space.domain();
  auto escapes = [&](const Point& x) {
    try {
      return !d.contains(map(x));
    } catch (const DomainError&) {
      return true;
    }
  };
  if (d.enumerable()) {
    for (const auto& x : d.enumerate())
      if (escapes(x)) return x;
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const Point x = d.sample(rng);
    if (escapes(x)) return x;
  }
  return std::nullopt;
}

}  // namespace gfix
