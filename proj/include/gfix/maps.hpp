#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gfix/core.hpp"
#include "gfix/exprparse.hpp"

namespace gfix {

// A self-map of a G-space.
class Map {
 public:
  using Function = std::function<Point(const Point&)>;

  Map(std::string description, Function fn);

  static Map constant(Point value);
  // x -> a*x + b, applied coordinate-wise; b.size() is the dimension.
  static Map affine(double a, std::vector<double> b);
  // Finite spaces: x -> images[x].
  static Map table(std::vector<std::size_t> images);
  // One expression per output coordinate, over variables x, y (and i when
  // `index` is given, for family members).
  static Map expression(const std::vector<std::string>& sources, std::optional<std::size_t> index = std::nullopt);

  Point operator()(const Point& x) const { return fn_(x); }

  // T^p; power(0) is the identity.
  Map power(std::size_t p) const;

  const std::string& description() const noexcept { return description_; }
  const std::optional<Point>& constant_value() const noexcept { return constant_; }
  const std::optional<std::vector<std::size_t>>& table_images() const noexcept { return table_; }

 private:
  std::string description_;
  Function fn_;
  std::optional<Point> constant_;
  std::optional<std::vector<std::size_t>> table_;
};

// Applies `map` p times starting from x.
Point iterate(const Map& map, const Point& x, std::size_t p);

// Indexed family i -> T_i, 1-based.
class MapFamily {
 public:
  using Generator = std::function<Map(std::size_t)>;

  MapFamily(std::string description, Generator gen);

  static MapFamily repeat(Map map);
  // T_i = maps[(i - 1) mod m]
  static MapFamily cycle(std::vector<Map> maps);
  // Expressions over x, y and the generation index i.
  static MapFamily expression(std::vector<std::string> sources);

  Map operator[](std::size_t i) const;
  const std::string& description() const noexcept { return description_; }

 private:
  std::string description_;
  Generator gen_;
};

enum class MapKind { Constant, Affine, Table, Expression };

// Declarative map description as read from configs.
struct MapSpec {
  MapKind kind = MapKind::Constant;
  std::vector<double> constant;        // coordinates of the constant value
  std::optional<std::size_t> constant_index;
  double a = 1.0;                      // affine slope
  std::vector<double> b;               // affine offset
  std::vector<std::size_t> table;
  std::vector<std::string> expressions;
};

Map build_map(const MapSpec& spec);

// Samples the domain and returns a point whose image leaves the domain, if any.
// Enumerable domains are scanned exhaustively.
std::optional<Point> find_domain_escape(const GSpace& space, const Map& map, std::size_t samples, std::uint64_t seed);

}  // namespace gfix
