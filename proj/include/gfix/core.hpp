#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gfix/error.hpp"

namespace gfix {

// A point of a G-metric space: either real coordinates (dimension 1 or 2)
// or an index into a finite tabulated set.
class Point {
 public:
  static constexpr std::size_t kMaxDim = 2;

  Point() = default;

  static Point real(double x);
  static Point plane(double x, double y);
  static Point from_coords(std::span<const double> coords);
  static Point index(std::size_t i);

  bool indexed() const noexcept { return indexed_; }
  std::size_t index() const;
  std::size_t dim() const noexcept { return dim_; }
  double operator[](std::size_t axis) const { return coords_[axis]; }
  std::span<const double> coords() const noexcept { return {coords_.data(), dim_}; }

  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::array<double, kMaxDim> coords_{};
  std::size_t dim_ = 0;
  std::size_t index_ = 0;
  bool indexed_ = false;
};

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  std::size_t max_iterations = 10000;

  void validate() const;

  // a <= b up to the combined absolute/relative allowance.
  bool leq(double a, double b) const noexcept;
  double allowance(double scale) const noexcept;
};

enum class DomainKind { Interval, Box, Grid, Finite };

// Carrier of a space. Grids are finite node sets laid over an interval or box;
// the bounding interval/box is the carrier, so maps may send grid nodes to
// off-grid points without leaving the space.
class Domain {
 public:
  static Domain interval(double lower, double upper);
  static Domain box(std::array<double, 2> lower, std::array<double, 2> upper);
  static Domain grid(double lower, double upper, std::size_t count);
  static Domain grid2d(std::array<double, 2> lower, std::array<double, 2> upper,
                       std::array<std::size_t, 2> counts);
  static Domain finite(std::size_t point_count);

  DomainKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  double lower(std::size_t axis) const { return lower_[axis]; }
  double upper(std::size_t axis) const { return upper_[axis]; }
  std::size_t grid_count(std::size_t axis) const { return counts_[axis]; }

  bool contains(const Point& p) const noexcept;
  bool enumerable() const noexcept { return kind_ == DomainKind::Grid || kind_ == DomainKind::Finite; }
  bool indexed() const noexcept { return kind_ == DomainKind::Finite; }

  // Number of enumerable points (grid nodes or table entries); 0 for continuous carriers.
  std::size_t size() const noexcept;
  Point at(std::size_t i) const;
  std::vector<Point> enumerate() const;

  // Uniform draw from the carrier, or from the enumeration when enumerable.
  Point sample(std::mt19937_64& rng) const;

  std::string describe() const;

 private:
  DomainKind kind_ = DomainKind::Interval;
  std::size_t dim_ = 1;
  std::array<double, 2> lower_{};
  std::array<double, 2> upper_{};
  std::array<std::size_t, 2> counts_{1, 1};
  std::size_t point_count_ = 0;
};

using GFunction = std::function<double(const Point&, const Point&, const Point&)>;

class GSpace {
 public:
  GSpace(std::string name, Domain domain, GFunction g, Tolerance tol = {},
         std::optional<bool> symmetric = std::nullopt);

  // Checked evaluation: domain membership of every argument, finite nonnegative result.
  double g(const Point& x, const Point& y, const Point& z) const;

  // d_G(x, y) = G(x, y, y) + G(x, x, y).
  double induced(const Point& x, const Point& y) const;

  // Index equality on tabulated spaces, |x - y|_inf <= abs_tol otherwise.
  bool same(const Point& x, const Point& y) const;

  void require(const Point& p) const;

  const std::string& name() const noexcept { return name_; }
  const Domain& domain() const noexcept { return domain_; }
  const Tolerance& tolerance() const noexcept { return tol_; }
  std::optional<bool> symmetric_flag() const noexcept { return symmetric_; }

  GSpace with_tolerance(Tolerance tol) const;
  void set_symmetric_flag(std::optional<bool> flag) { symmetric_ = flag; }

 private:
  std::string name_;
  Domain domain_;
  GFunction g_;
  Tolerance tol_;
  std::optional<bool> symmetric_;
};

double g_distance(const GSpace& space, const Point& x, const Point& y, const Point& z);
double induced_metric(const GSpace& space, const Point& x, const Point& y);

// Shortest round-trip decimal rendering of a double ("inf", "-inf", "nan" for non-finite).
std::string format_double(double v);

}  // namespace gfix
