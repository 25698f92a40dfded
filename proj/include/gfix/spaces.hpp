#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gfix/core.hpp"
#include "gfix/exprparse.hpp"

namespace gfix {

// A binary metric used to induce a G-metric. Not verified to be a metric
// unless verify_metric() is called.
class BaseMetric {
 public:
  using Function = std::function<double(const Point&, const Point&)>;

  BaseMetric(std::string name, Function fn, std::size_t dim = 0);

  static BaseMetric absolute();
  static BaseMetric euclidean();
  // d(x, y) given as an expression in the variables x and y (1-D carriers only).
  static BaseMetric expression(const std::string& source);

  double operator()(const Point& a, const Point& b) const;
  const std::string& name() const noexcept { return name_; }
  // Required carrier dimension, or 0 when any real dimension is accepted.
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::string name_;
  Function fn_;
  std::size_t dim_;
};

// G(x,y,z) = d(x,y) + d(y,z) + d(x,z)
GSpace build_perimeter(const BaseMetric& metric, const Domain& domain, Tolerance tol = {});
// G(x,y,z) = max{d(x,y), d(y,z), d(x,z)}
GSpace build_max(const BaseMetric& metric, const Domain& domain, Tolerance tol = {});
// G = 0 on constant triples, 1 otherwise.
GSpace build_discrete(std::size_t point_count, Tolerance tol = {});

// Uncompressed n^3 table, row-major: values[(x*n + y)*n + z].
struct TablePayload {
  std::size_t n = 0;
  std::vector<double> values;

  double at(std::size_t x, std::size_t y, std::size_t z) const { return values[(x * n + y) * n + z]; }
  double& at(std::size_t x, std::size_t y, std::size_t z) { return values[(x * n + y) * n + z]; }
};

// Axioms are not assumed; run check_axioms on the result.
GSpace load_table(const TablePayload& table, Tolerance tol = {});

// Table files are JSON objects {"n": N, "values": [N^3 numbers]}.
TablePayload parse_table_text(const std::string& text);
TablePayload read_table_file(const std::string& path);
std::string table_to_text(const TablePayload& table);

// Evaluates G on every triple of an enumerable space.
TablePayload tabulate(const GSpace& space);

struct MetricCheck {
  bool ok = true;
  std::string failed_property;
  std::vector<Point> witness;
  double violation = 0.0;
  std::size_t samples = 0;
};

// Sampling check of identity, symmetry and the triangle inequality.
MetricCheck verify_metric(const BaseMetric& metric, const Domain& domain, std::size_t samples,
                          std::uint64_t seed, Tolerance tol = {});

enum class SpaceKind { Perimeter, Max, Discrete, Table };

struct SpaceRecipe {
  SpaceKind kind = SpaceKind::Perimeter;
  std::string metric = "absolute";  // absolute | euclidean | an expression in x, y
  Domain domain = Domain::interval(0.0, 1.0);
  std::size_t point_count = 0;       // discrete
  TablePayload table;                // table
  bool verify_metric = false;
  std::size_t verify_samples = 1000;
  std::uint64_t verify_seed = 42;
};

GSpace build_space(const SpaceRecipe& recipe, Tolerance tol = {});

}  // namespace gfix
