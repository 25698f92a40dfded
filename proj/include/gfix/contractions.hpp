#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gfix/core.hpp"
#include "gfix/maps.hpp"

namespace gfix {

// The contractive inequalities. With P = 2k+1 and images A, B, C:
//
//   G(A, B, C)^P <= lambda * G(x, A', A') * G(y, B', B')^k * G(z, C', C')^k
//
// SingleOddPower   A=Tx, B=Ty, C=Tz
// SingleIterate    same with T^p
// Triplet          A=Tx, B=Py, C=Qz, k=1
// FamilyUniform    A=T_i x, B=T_j y, C=T_l z, k=1
// FamilyCoeff      as FamilyUniform with lambda replaced by delta(i, j, l)
// FamilyOddPower   as FamilyUniform with general k
// OrbitSamePoint   A=T^{2k-1}x, B=T^{2k}x, C=T^{2k+1}x, right side A_k(x)
// OrbitThreePoint  A=T^{2k-1}x, B=T^{2k}y, C=T^{2k+1}z
enum class Variant {
  SingleOddPower,
  SingleIterate,
  Triplet,
  FamilyUniform,
  FamilyCoeff,
  FamilyOddPower,
  OrbitSamePoint,
  OrbitThreePoint,
};

std::string_view variant_name(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

// Delta(i, j, l) for the coefficient family variant.
using CoefficientSource = std::function<double(std::size_t, std::size_t, std::size_t)>;

struct Condition {
  Variant variant = Variant::SingleOddPower;
  std::size_t k = 1;
  std::size_t p = 1;
  double lambda = 0.0;
  CoefficientSource delta;

  // Throws InputError when k, p, lambda or the coefficient source are unusable.
  void validate() const;

  // Exponent applied to the image term: 2k+1, or 3 for the k=1-only variants.
  std::size_t lhs_power() const noexcept;
  // Exponent applied to the second and third displacement factors.
  std::size_t rhs_power() const noexcept;
  bool is_family() const noexcept;
  bool is_orbit() const noexcept;
  std::size_t map_arity() const noexcept;  // 1 or 3; 0 for families

  // r_i = delta(i, i+1, i+2)
  double r(std::size_t i) const;
  // The constant multiplying the right-hand side at generation indices (i, j, l).
  double coefficient(std::array<std::size_t, 3> indices) const;
};

// The map(s) a condition talks about.
struct MapSet {
  std::vector<Map> maps;
  std::optional<MapFamily> family;

  static MapSet single(Map t);
  static MapSet triplet(Map t, Map p, Map q);
  static MapSet of_family(MapFamily f);

  // Member used at generation index i (1-based) for families, maps[i-1] otherwise.
  Map member(std::size_t i) const;
};

struct Tuple {
  Point x, y, z;
  std::array<std::size_t, 3> indices{1, 2, 3};
};

// Both sides of one inequality instance with the constant excluded from rhs.
// When any factor drops below kLogSpaceThreshold the powers are formed in log
// space; lhs/rhs may then underflow while log_lhs/log_rhs stay exact.
struct SideValues {
  double image = 0.0;  // G(A, B, C) before the power
  double lhs = 0.0;
  double rhs = 0.0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  bool lhs_zero = true;
  bool rhs_zero = true;
  bool log_space = false;

  // Per-tuple lambda: 0 when lhs = 0, infinity when rhs = 0 < lhs.
  double ratio() const;
  // lhs <= coefficient * rhs within the tolerance allowance.
  bool holds_with(double coefficient, const Tolerance& tol) const;
};

inline constexpr double kLogSpaceThreshold = 1e-100;

SideValues eval_condition(const GSpace& space, const Condition& cond, const MapSet& maps, const Tuple& tuple);

// Orbit variants only; the x-only overload is the same-point form.
SideValues eval_orbit_condition(const GSpace& space, const Map& t, const Condition& cond, const Point& x);
SideValues eval_orbit_condition(const GSpace& space, const Map& t, const Condition& cond, const Point& x,
                                const Point& y, const Point& z);

struct SamplingPlan {
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  bool exhaustive = false;
  std::size_t index_horizon = 3;  // family indices drawn from 1..index_horizon
};

enum class ConditionStatus { SatisfiedWithLambda, Violated, Degenerate };

std::string_view status_name(ConditionStatus s);

struct ConditionReport {
  ConditionStatus status = ConditionStatus::Degenerate;
  double min_lambda = 0.0;
  std::optional<Tuple> witness;  // tuple attaining min_lambda
  SideValues witness_values;
  std::size_t tuples_tested = 0;
  std::size_t vacuous_tuples = 0;  // lhs = rhs = 0
  // FamilyCoeff only: a tuple where lhs exceeds delta * rhs.
  std::optional<Tuple> coefficient_violation;
  // min_lambda is within the condition's declared lambda.
  bool declared_lambda_ok = true;
  bool exhaustive = false;
  std::uint64_t seed = 0;

  bool holds() const noexcept { return status != ConditionStatus::Violated; }
};

// Enumerates all tuples of an enumerable domain when plan.exhaustive is set,
// otherwise draws plan.samples tuples.
ConditionReport estimate_min_lambda(const GSpace& space, const Condition& cond, const MapSet& maps,
                                    const SamplingPlan& plan);

// Calls `visit` for every tuple the plan covers. Exposed for the oracle.
void for_each_tuple(const GSpace& space, const Condition& cond, const SamplingPlan& plan,
                    const std::function<void(const Tuple&)>& visit);
std::size_t exhaustive_tuple_count(const GSpace& space, const Condition& cond, std::size_t index_horizon);

enum class DegeneracyVerdict {
  ConstantOnSamples,          // every tested x has Tx = u
  ConditionFailsAtFixedPoint, // some (x, u, u) has rhs = 0 < lhs
  CertificateContradicted,    // as above, although the caller certified the condition
};

std::string_view degeneracy_name(DegeneracyVerdict v);

struct DegeneracyReport {
  DegeneracyVerdict verdict = DegeneracyVerdict::ConstantOnSamples;
  std::vector<Point> witnesses;  // x with G(Tx, u, u) > tol
  std::vector<SideValues> witness_values;
  std::size_t points_tested = 0;
};

// Evaluates the condition at (x, u, u) for a (common) fixed point u. With u fixed the
// right side vanishes, so the condition can only hold where Tx = u.
DegeneracyReport detect_degeneracy(const GSpace& space, const Condition& cond, const MapSet& maps, const Point& u,
                                   const SamplingPlan& plan, bool certified);

}  // namespace gfix
