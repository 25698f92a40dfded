#include "gfix/contractions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gfix {

namespace {

constexpr std::array<std::string_view, 8> kVariantNames = {
    "SingleOddPower", "SingleIterate", "Triplet",        "FamilyUniform",
    "FamilyCoeff",    "FamilyOddPower", "OrbitSamePoint", "OrbitThreePoint"};

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

std::string_view variant_name(Variant v) { return kVariantNames[static_cast<std::size_t>(v)]; }

std::optional<Variant> parse_variant(std::string_view name) {
  for (std::size_t i = 0; i < kVariantNames.size(); ++i)
    if (kVariantNames[i] == name) return static_cast<Variant>(i);
  return std::nullopt;
}

// ---- Condition ----

void Condition::validate() const {
  if (k < 1) throw InputError("k must be at least 1");
  if (p < 1) throw InputError("p must be at least 1");
  if (!(lambda >= 0.0 && lambda < 1.0)) throw InputError("lambda must lie in [0, 1), got " + format_double(lambda));
  if (variant == Variant::FamilyCoeff && !delta) throw InputError("FamilyCoeff needs a coefficient source");
}

std::size_t Condition::lhs_power() const noexcept { return 2 * rhs_power() + 1; }

std::size_t Condition::rhs_power() const noexcept {
  switch (variant) {
    case Variant::Triplet:
    case Variant::FamilyUniform:
    case Variant::FamilyCoeff:
      return 1;
    default:
      return k;
  }
}

bool Condition::is_family() const noexcept {
  return variant == Variant::FamilyUniform || variant == Variant::FamilyCoeff || variant == Variant::FamilyOddPower;
}

bool Condition::is_orbit() const noexcept {
  return variant == Variant::OrbitSamePoint || variant == Variant::OrbitThreePoint;
}

std::size_t Condition::map_arity() const noexcept {
  if (is_family()) return 0;
  return variant == Variant::Triplet ? 3 : 1;
}

double Condition::r(std::size_t i) const { return coefficient({i, i + 1, i + 2}); }

double Condition::coefficient(std::array<std::size_t, 3> idx) const {
  if (variant != Variant::FamilyCoeff) return lambda;
  const double v = delta(idx[0], idx[1], idx[2]);
  if (!(v >= 0.0 && v < 1.0)) {
    throw InputError("coefficient delta(" + std::to_string(idx[0]) + "," + std::to_string(idx[1]) + "," +
                     std::to_string(idx[2]) + ") = " + format_double(v) + " is outside [0, 1)");
  }
  return v;
}

// ---- MapSet ----

MapSet MapSet::single(Map t) { return MapSet{{std::move(t)}, std::nullopt}; }

MapSet MapSet::triplet(Map t, Map p, Map q) { return MapSet{{std::move(t), std::move(p), std::move(q)}, std::nullopt}; }

MapSet MapSet::of_family(MapFamily f) { return MapSet{{}, std::move(f)}; }

Map MapSet::member(std::size_t i) const {
  if (family) return (*family)[i];
  if (i == 0 || i > maps.size()) throw InputError("map index " + std::to_string(i) + " out of range");
  return maps[i - 1];
}

// ---- SideValues ----

double SideValues::ratio() const {
  if (lhs_zero) return 0.0;
  if (rhs_zero) return kInf;
  if (log_space) return std::exp(log_lhs - log_rhs);
  return lhs / rhs;
}

bool SideValues::holds_with(double coefficient, const Tolerance& tol) const {
  if (lhs_zero) return true;
  if (rhs_zero || coefficient == 0.0) return image <= tol.abs_tol;
  if (log_space) return log_lhs <= std::log(coefficient) + log_rhs + std::log1p(tol.rel_tol);
  return tol.leq(lhs, coefficient * rhs);
}

namespace {

// Forms image^P against a * b^k * c^k.
SideValues combine(double image, double a, double b, double c, std::size_t lhs_power, std::size_t rhs_power) {
  SideValues s;
  s.image = image;
  s.lhs_zero = image == 0.0;
  s.rhs_zero = a == 0.0 || b == 0.0 || c == 0.0;
  auto tiny = [](double v) { return v != 0.0 && v < kLogSpaceThreshold; };
  s.log_space = tiny(image) || tiny(a) || tiny(b) || tiny(c);
  const double lp = static_cast<double>(lhs_power);
  const double rp = static_cast<double>(rhs_power);
  s.log_lhs = s.lhs_zero ? -kInf : lp * std::log(image);
  s.log_rhs = s.rhs_zero ? -kInf : std::log(a) + rp * (std::log(b) + std::log(c));
  if (s.log_space) {
    s.lhs = std::exp(s.log_lhs);
    s.rhs = std::exp(s.log_rhs);
  } else {
    s.lhs = std::pow(image, lp);
    s.rhs = a * std::pow(b, rp) * std::pow(c, rp);
  }
  return s;
}

void require_arity(const Condition& cond, const MapSet& maps) {
  if (cond.is_family()) {
    if (!maps.family) throw InputError(std::string(variant_name(cond.variant)) + " needs a map family");
    return;
  }
  if (maps.family || maps.maps.size() != cond.map_arity()) {
    throw InputError(std::string(variant_name(cond.variant)) + " needs exactly " + std::to_string(cond.map_arity()) +
                     " map(s), got " + (maps.family ? std::string("a family") : std::to_string(maps.maps.size())));
  }
}

}  // namespace

SideValues eval_orbit_condition(const GSpace& space, const Map& t, const Condition& cond, const Point& x,
                                const Point& y, const Point& z) {
  const std::size_t k = cond.k;
  // Orbits up to T^{2k+1}; index j holds T^j.
  auto orbit = [&](const Point& start) {
    std::vector<Point> o{start};
    for (std::size_t j = 1; j <= 2 * k + 1; ++j) o.push_back(t(o.back()));
    return o;
  };
  const auto ox = orbit(x);
  const auto oy = (y == x) ? ox : orbit(y);
  const auto oz = (z == x) ? ox : orbit(z);
  const double image = space.g(ox[2 * k - 1], oy[2 * k], oz[2 * k + 1]);
  const double a = space.g(ox[2 * k - 2], ox[2 * k - 1], ox[2 * k - 1]);
  const double b = space.g(oy[2 * k - 1], oy[2 * k], oy[2 * k]);
  const double c = space.g(oz[2 * k], oz[2 * k + 1], oz[2 * k + 1]);
  return combine(image, a, b, c, 2 * k + 1, k);
}

SideValues eval_orbit_condition(const GSpace& space, const Map& t, const Condition& cond, const Point& x) {
  return eval_orbit_condition(space, t, cond, x, x, x);
}

SideValues eval_condition(const GSpace& space, const Condition& cond, const MapSet& maps, const Tuple& tuple) {
  require_arity(cond, maps);
  if (cond.k < 1 || cond.p < 1) throw InputError("k and p must be at least 1");
  const auto& [x, y, z, idx] = tuple;
  switch (cond.variant) {
    case Variant::OrbitSamePoint:
      return eval_orbit_condition(space, maps.maps[0], cond, x);
    case Variant::OrbitThreePoint:
      return eval_orbit_condition(space, maps.maps[0], cond, x, y, z);
    default:
      break;
  }
  Map mx = maps.maps.empty() ? maps.member(idx[0]) : maps.maps[0];
  Map my = mx;
  Map mz = mx;
  if (cond.variant == Variant::SingleIterate) {
    mx = my = mz = mx.power(cond.p);
  } else if (cond.variant == Variant::Triplet) {
    my = maps.maps[1];
    mz = maps.maps[2];
  } else if (cond.is_family()) {
    my = maps.member(idx[1]);
    mz = maps.member(idx[2]);
  }
  const Point tx = mx(x);
  const Point ty = my(y);
  const Point tz = mz(z);
  const double image = space.g(tx, ty, tz);
  const double a = space.g(x, tx, tx);
  const double b = space.g(y, ty, ty);
  const double c = space.g(z, tz, tz);
  return combine(image, a, b, c, cond.lhs_power(), cond.rhs_power());
}

// ---- tuple enumeration ----

std::size_t exhaustive_tuple_count(const GSpace& space, const Condition& cond, std::size_t index_horizon) {
  const auto& d = space.domain();
  if (!d.enumerable()) return 0;
  const double n = static_cast<double>(d.size());
  double count = cond.variant == Variant::OrbitSamePoint ? n : n * n * n;
  if (cond.is_family()) count *= std::pow(static_cast<double>(index_horizon), 3.0);
  return count > 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(count);
}

void for_each_tuple(const GSpace& space, const Condition& cond, const SamplingPlan& plan,
                    const std::function<void(const Tuple&)>& visit) {
  const auto& d = space.domain();
  const std::size_t horizon = cond.is_family() ? std::max<std::size_t>(1, plan.index_horizon) : 1;
  auto default_indices = [&](std::size_t i, std::size_t j, std::size_t l) {
    return cond.is_family() ? std::array<std::size_t, 3>{i, j, l} : std::array<std::size_t, 3>{1, 2, 3};
  };

  if (plan.exhaustive) {
    if (!d.enumerable()) throw InputError("exhaustive plans need an enumerable (grid or tabulated) space");
    const auto pts = d.enumerate();
    if (cond.variant == Variant::OrbitSamePoint) {
      for (const auto& x : pts) visit(Tuple{x, x, x, default_indices(1, 2, 3)});
      return;
    }
    for (std::size_t i = 1; i <= horizon; ++i)
      for (std::size_t j = 1; j <= horizon; ++j)
        for (std::size_t l = 1; l <= horizon; ++l)
          for (const auto& x : pts)
            for (const auto& y : pts)
              for (const auto& z : pts) visit(Tuple{x, y, z, default_indices(i, j, l)});
    return;
  }

  std::mt19937_64 rng(plan.seed);
  std::uniform_int_distribution<std::size_t> pick_index(1, horizon);
  for (std::size_t s = 0; s < plan.samples; ++s) {
    const Point x = d.sample(rng);
    if (cond.variant == Variant::OrbitSamePoint) {
      visit(Tuple{x, x, x, default_indices(1, 2, 3)});
      continue;
    }
    const Point y = d.sample(rng);
    const Point z = d.sample(rng);
    std::array<std::size_t, 3> idx{1, 2, 3};
    if (cond.is_family()) idx = {pick_index(rng), pick_index(rng), pick_index(rng)};
    visit(Tuple{x, y, z, idx});
  }
}

std::string_view status_name(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::SatisfiedWithLambda: return "satisfied-with-lambda";
    case ConditionStatus::Violated: return "violated";
    case ConditionStatus::Degenerate: return "degenerate";
  }
  return "?";
}

ConditionReport estimate_min_lambda(const GSpace& space, const Condition& cond, const MapSet& maps,
                                    const SamplingPlan& plan) {
  require_arity(cond, maps);
  ConditionReport r;
  r.exhaustive = plan.exhaustive;
  r.seed = plan.seed;
  const auto& tol = space.tolerance();

  for_each_tuple(space, cond, plan, [&](const Tuple& t) {
    const SideValues sv = eval_condition(space, cond, maps, t);
    ++r.tuples_tested;
    if (sv.lhs_zero && sv.rhs_zero) ++r.vacuous_tuples;
    const double ratio = sv.ratio();
    if (!r.witness || ratio > r.min_lambda) {
      r.min_lambda = ratio;
      r.witness = t;
      r.witness_values = sv;
    }
    if (cond.variant == Variant::FamilyCoeff && !r.coefficient_violation &&
        !sv.holds_with(cond.coefficient(t.indices), tol)) {
      r.coefficient_violation = t;
    }
  });

  if (r.tuples_tested == r.vacuous_tuples) {
    r.status = ConditionStatus::Degenerate;
  } else if (r.min_lambda < 1.0 - tol.rel_tol && !r.coefficient_violation) {
    r.status = ConditionStatus::SatisfiedWithLambda;
  } else {
    r.status = ConditionStatus::Violated;
  }
  if (cond.variant != Variant::FamilyCoeff) r.declared_lambda_ok = r.min_lambda <= cond.lambda + tol.rel_tol;
  return r;
}

// ---- degeneracy ----

std::string_view degeneracy_name(DegeneracyVerdict v) {
  switch (v) {
    case DegeneracyVerdict::ConstantOnSamples: return "constant-on-samples";
    case DegeneracyVerdict::ConditionFailsAtFixedPoint: return "condition-fails-at-fixed-point";
    case DegeneracyVerdict::CertificateContradicted: return "degenerate: condition forces constant map";
  }
  return "?";
}

DegeneracyReport detect_degeneracy(const GSpace& space, const Condition& cond, const MapSet& maps, const Point& u,
                                   const SamplingPlan& plan, bool certified) {
  require_arity(cond, maps);
  if (cond.is_orbit()) throw InputError("degeneracy detection applies to the pointwise conditions only");
  const auto& tol = space.tolerance();

  // Members that must fix u: all listed maps, or the first index_horizon + 2 family members.
  std::vector<std::size_t> members;
  const std::size_t member_count =
      maps.family ? std::max<std::size_t>(1, plan.index_horizon) + 2 : maps.maps.size();
  for (std::size_t i = 1; i <= member_count; ++i) members.push_back(i);
  for (std::size_t i : members) {
    Map m = maps.member(i);
    if (cond.variant == Variant::SingleIterate) m = m.power(cond.p);
    const Point mu = m(u);
    if (space.g(u, mu, mu) > tol.abs_tol) {
      throw PreconditionError("u = " + u.to_string() + " is not a fixed point of map " + std::to_string(i));
    }
  }

  std::vector<Point> xs;
  if (space.domain().enumerable()) {
    xs = space.domain().enumerate();
  } else {
    std::mt19937_64 rng(plan.seed);
    for (std::size_t s = 0; s < plan.samples; ++s) xs.push_back(space.domain().sample(rng));
  }

  DegeneracyReport r;
  const std::size_t horizon = maps.family ? std::max<std::size_t>(1, plan.index_horizon) : 1;
  for (const auto& x : xs) {
    for (std::size_t i = 1; i <= horizon; ++i) {
      const Tuple t{x, u, u, {i, i + 1, i + 2}};
      const SideValues sv = eval_condition(space, cond, maps, t);
      ++r.points_tested;
      if (!sv.holds_with(cond.coefficient(t.indices), tol)) {
        r.witnesses.push_back(x);
        r.witness_values.push_back(sv);
        break;
      }
    }
  }
  if (r.witnesses.empty()) {
    r.verdict = DegeneracyVerdict::ConstantOnSamples;
  } else {
    r.verdict = certified ? DegeneracyVerdict::CertificateContradicted : DegeneracyVerdict::ConditionFailsAtFixedPoint;
  }
  return r;
}

}  // namespace gfix
