#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gfix/contractions.hpp"
#include "gfix/core.hpp"
#include "gfix/maps.hpp"
#include "gfix/solver.hpp"

namespace gfix {

// Hard caps. Exceeding one throws BudgetExceeded; the oracle never samples.
inline constexpr std::size_t kOraclePointBudget = 10'000;
inline constexpr std::size_t kOracleTupleBudget = 10'000'000;

// Exact {x : T(x) = x} by full scan, in domain order.
// The table overload throws InputError on a non-total table (wrong size or out-of-range image).
std::vector<Point> enumerate_fixed_points(const GSpace& space, const std::vector<std::size_t>& table);
std::vector<Point> enumerate_fixed_points(const GSpace& space, const Map& map);

// Sup of the per-tuple lambda over every tuple (family indices in 1..index_horizon).
ConditionReport exhaustive_condition_check(const GSpace& space, const Condition& cond, const MapSet& maps,
                                           std::size_t index_horizon = 3);

struct Discrepancy {
  std::string check;   // "solver-point", "uniqueness", "degeneracy", "sampled-verdict", ...
  std::string detail;
  std::vector<Point> witness;
};

struct OracleReport {
  std::vector<std::vector<Point>> fixed_points;  // per map; family members 1..index_horizon
  std::vector<Point> common_fixed_points;
  ConditionReport exhaustive;
  bool certified = false;  // exhaustive min_lambda < 1 - rel_tol with no coefficient violation
  std::optional<Point> solver_point;
  bool agreement = true;
  std::vector<Discrepancy> discrepancies;
};

OracleReport cross_validate(const GSpace& space, const Condition& cond, const MapSet& maps,
                            const std::optional<FixedPointResult>& solver = std::nullopt,
                            const std::optional<ConditionReport>& sampled = std::nullopt,
                            std::size_t index_horizon = 3);

}  // namespace gfix
