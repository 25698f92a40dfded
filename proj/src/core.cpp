#include "gfix/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace gfix {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string("non-finite coordinate in ") + what);
  }
}

}  // namespace

// ---- Point ----

Point Point::real(double x) {
  require_finite(x, "point");
  Point p;
  p.coords_[0] = x;
  p.dim_ = 1;
  return p;
}

Point Point::plane(double x, double y) {
  require_finite(x, "point");
  require_finite(y, "point");
  Point p;
  p.coords_ = {x, y};
  p.dim_ = 2;
  return p;
}

Point Point::from_coords(std::span<const double> coords) {
  if (coords.size() == 1) return real(coords[0]);
  if (coords.size() == 2) return plane(coords[0], coords[1]);
  throw DomainError("points must have dimension 1 or 2, got " + std::to_string(coords.size()));
}

Point Point::index(std::size_t i) {
  Point p;
  p.index_ = i;
  p.indexed_ = true;
  return p;
}

std::size_t Point::index() const {
  if (!indexed_) throw DomainError("point " + to_string() + " is not a tabulated index");
  return index_;
}

std::string Point::to_string() const {
  if (indexed_) return "#" + std::to_string(index_);
  if (dim_ == 1) return format_double(coords_[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) s += ", ";
    s += format_double(coords_[i]);
  }
  return s + ")";
}

// ---- Tolerance ----

void Tolerance::validate() const {
  if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw ConfigError("abs_tol must be positive and finite");
  if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) throw ConfigError("rel_tol must be nonnegative and finite");
  if (max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
}

double Tolerance::allowance(double scale) const noexcept { return abs_tol + rel_tol * std::abs(scale); }

bool Tolerance::leq(double a, double b) const noexcept {
  return a <= b + allowance(std::max(std::abs(a), std::abs(b)));
}

// ---- Domain ----

Domain Domain::interval(double lower, double upper) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower <= upper)) {
    throw ConfigError("interval bounds must be finite with lower <= upper");
  }
  Domain d;
  d.kind_ = DomainKind::Interval;
  d.dim_ = 1;
  d.lower_ = {lower, 0.0};
  d.upper_ = {upper, 0.0};
  return d;
}

Domain Domain::box(std::array<double, 2> lower, std::array<double, 2> upper) {
  for (std::size_t a = 0; a < 2; ++a) {
    if (!std::isfinite(lower[a]) || !std::isfinite(upper[a]) || !(lower[a] <= upper[a])) {
      throw ConfigError("box bounds must be finite with lower <= upper on every axis");
    }
  }
  Domain d;
  d.kind_ = DomainKind::Box;
  d.dim_ = 2;
  d.lower_ = lower;
  d.upper_ = upper;
  return d;
}

Domain Domain::grid(double lower, double upper, std::size_t count) {
  if (count == 0) throw ConfigError("grid needs at least one node");
  Domain d = interval(lower, upper);
  d.kind_ = DomainKind::Grid;
  d.counts_ = {count, 1};
  return d;
}

Domain Domain::grid2d(std::array<double, 2> lower, std::array<double, 2> upper,
                      std::array<std::size_t, 2> counts) {
  if (counts[0] == 0 || counts[1] == 0) throw ConfigError("grid needs at least one node per axis");
  Domain d = box(lower, upper);
  d.kind_ = DomainKind::Grid;
  d.counts_ = counts;
  return d;
}

Domain Domain::finite(std::size_t point_count) {
  if (point_count == 0) throw ConfigError("finite space needs at least one point");
  Domain d;
  d.kind_ = DomainKind::Finite;
  d.dim_ = 0;
  d.point_count_ = point_count;
  return d;
}

bool Domain::contains(const Point& p) const noexcept {
  if (kind_ == DomainKind::Finite) return p.indexed() && p.index() < point_count_;
  if (p.indexed() || p.dim() != dim_) return false;
  for (std::size_t a = 0; a < dim_; ++a) {
    const double v = p[a];
    if (!std::isfinite(v) || v < lower_[a] || v > upper_[a]) return false;
  }
  return true;
}

std::size_t Domain::size() const noexcept {
  switch (kind_) {
    case DomainKind::Finite:
      return point_count_;
    case DomainKind::Grid:
      return dim_ == 1 ? counts_[0] : counts_[0] * counts_[1];
    default:
      return 0;
  }
}

namespace {

double grid_node(double lo, double hi, std::size_t count, std::size_t j) {
  if (count == 1) return lo;
  if (j + 1 == count) return hi;
  return lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(count - 1);
}

}  // namespace

Point Domain::at(std::size_t i) const {
  if (i >= size()) throw DomainError("enumeration index " + std::to_string(i) + " out of range");
  if (kind_ == DomainKind::Finite) return Point::index(i);
  if (dim_ == 1) return Point::real(grid_node(lower_[0], upper_[0], counts_[0], i));
  const std::size_t ix = i % counts_[0];
  const std::size_t iy = i / counts_[0];
  return Point::plane(grid_node(lower_[0], upper_[0], counts_[0], ix),
                      grid_node(lower_[1], upper_[1], counts_[1], iy));
}

std::vector<Point> Domain::enumerate() const {
  std::vector<Point> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

Point Domain::sample(std::mt19937_64& rng) const {
  if (enumerable()) {
    std::uniform_int_distribution<std::size_t> pick(0, size() - 1);
    return at(pick(rng));
  }
  std::array<double, 2> c{};
  for (std::size_t a = 0; a < dim_; ++a) {
    std::uniform_real_distribution<double> u(lower_[a], upper_[a]);
    c[a] = lower_[a] == upper_[a] ? lower_[a] : u(rng);
  }
  return Point::from_coords(std::span<const double>(c.data(), dim_));
}

std::string Domain::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case DomainKind::Interval:
      os << "interval[" << format_double(lower_[0]) << ", " << format_double(upper_[0]) << "]";
      break;
    case DomainKind::Box:
      os << "box[" << format_double(lower_[0]) << ", " << format_double(upper_[0]) << "]x["
         << format_double(lower_[1]) << ", " << format_double(upper_[1]) << "]";
      break;
    case DomainKind::Grid:
      os << "grid" << dim_ << "d(" << size() << " nodes)";
      break;
    case DomainKind::Finite:
      os << "finite(" << point_count_ << ")";
      break;
  }
  return os.str();
}

// ---- GSpace ----

GSpace::GSpace(std::string name, Domain domain, GFunction g, Tolerance tol, std::optional<bool> symmetric)
    : name_(std::move(name)), domain_(domain), g_(std::move(g)), tol_(tol), symmetric_(symmetric) {
  if (!g_) throw ConfigError("G-space '" + name_ + "' has no distance function");
  tol_.validate();
}

void GSpace::require(const Point& p) const {
  if (!domain_.contains(p)) {
    throw DomainError("point " + p.to_string() + " is outside " + domain_.describe());
  }
}

double GSpace::g(const Point& x, const Point& y, const Point& z) const {
  require(x);
  require(y);
  require(z);
  const double v = g_(x, y, z);
  if (!std::isfinite(v) || v < 0.0) {
    throw EvaluationError("G(" + x.to_string() + ", " + y.to_string() + ", " + z.to_string() +
                          ") = " + format_double(v) + " is not a finite nonnegative value");
  }
  return v;
}

double GSpace::induced(const Point& x, const Point& y) const { return g(x, y, y) + g(x, x, y); }

bool GSpace::same(const Point& x, const Point& y) const {
  if (x.indexed() || y.indexed()) return x.indexed() && y.indexed() && x.index() == y.index();
  if (x.dim() != y.dim()) return false;
  double worst = 0.0;
  for (std::size_t a = 0; a < x.dim(); ++a) worst = std::max(worst, std::abs(x[a] - y[a]));
  return worst <= tol_.abs_tol;
}

GSpace GSpace::with_tolerance(Tolerance tol) const {
  GSpace copy = *this;
  tol.validate();
  copy.tol_ = tol;
  return copy;
}

double g_distance(const GSpace& space, const Point& x, const Point& y, const Point& z) {
  return space.g(x, y, z);
}

double induced_metric(const GSpace& space, const Point& x, const Point& y) { return space.induced(x, y); }

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace gfix
