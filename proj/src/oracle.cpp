#include "gfix/oracle.hpp"

#include <algorithm>

namespace gfix {

namespace {

void require_finite(const GSpace& space) {
  const auto& d = space.domain();
  if (!d.enumerable()) throw InputError("oracle needs a finite (grid or tabulated) space");
  if (d.size() > kOraclePointBudget) {
    throw BudgetExceeded("oracle point budget exceeded: " + std::to_string(d.size()) + " > " +
                         std::to_string(kOraclePointBudget));
  }
}

bool contains(const GSpace& space, const std::vector<Point>& pts, const Point& p) {
  return std::any_of(pts.begin(), pts.end(), [&](const Point& q) { return space.same(p, q); });
}

}  // namespace

std::vector<Point> enumerate_fixed_points(const GSpace& space, const std::vector<std::size_t>& table) {
  require_finite(space);
  const auto& d = space.domain();
  if (!d.indexed()) throw InputError("map tables apply to tabulated spaces only");
  if (table.size() != d.size()) {
    throw InputError("map table has " + std::to_string(table.size()) + " entries for " + std::to_string(d.size()) +
                     " points");
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= table.size()) {
      throw InputError("map table entry " + std::to_string(i) + " -> " + std::to_string(table[i]) + " is out of range");
    }
    if (table[i] == i) out.push_back(Point::index(i));
  }
  return out;
}

std::vector<Point> enumerate_fixed_points(const GSpace& space, const Map& map) {
  require_finite(space);
  if (const auto& t = map.table_images(); t && space.domain().indexed()) return enumerate_fixed_points(space, *t);
  std::vector<Point> out;
  for (const auto& x : space.domain().enumerate()) {
    if (space.same(map(x), x)) out.push_back(x);
  }
  return out;
}

ConditionReport exhaustive_condition_check(const GSpace& space, const Condition& cond, const MapSet& maps,
                                           std::size_t index_horizon) {
  require_finite(space);
  const std::size_t count = exhaustive_tuple_count(space, cond, index_horizon);
  if (count > kOracleTupleBudget) {
    throw BudgetExceeded("exhaustive check needs " + std::to_string(count) + " tuples, budget is " +
                         std::to_string(kOracleTupleBudget));
  }
  SamplingPlan plan;
  plan.exhaustive = true;
  plan.index_horizon = index_horizon;
  plan.seed = 0;
  return estimate_min_lambda(space, cond, maps, plan);
}

OracleReport cross_validate(const GSpace& space, const Condition& cond, const MapSet& maps,
                            const std::optional<FixedPointResult>& solver,
                            const std::optional<ConditionReport>& sampled, std::size_t index_horizon) {
  OracleReport rep;
  const double abs_tol = space.tolerance().abs_tol;

  std::vector<Map> members;
  if (maps.family) {
    for (std::size_t i = 1; i <= index_horizon; ++i) members.push_back((*maps.family)[i]);
  } else {
    members = maps.maps;
  }
  for (const auto& m : members) rep.fixed_points.push_back(enumerate_fixed_points(space, m));
  if (!rep.fixed_points.empty()) {
    for (const auto& p : rep.fixed_points.front()) {
      const bool everywhere = std::all_of(rep.fixed_points.begin() + 1, rep.fixed_points.end(),
                                          [&](const auto& set) { return contains(space, set, p); });
      if (everywhere) rep.common_fixed_points.push_back(p);
    }
  }

  rep.exhaustive = exhaustive_condition_check(space, cond, maps, index_horizon);
  rep.certified = rep.exhaustive.status != ConditionStatus::Violated && rep.exhaustive.min_lambda < 1.0 - space.tolerance().rel_tol;

  auto flag = [&](std::string check, std::string detail, std::vector<Point> witness) {
    rep.agreement = false;
    rep.discrepancies.push_back({std::move(check), std::move(detail), std::move(witness)});
  };

  // (a) the solver's point is a genuine common fixed point
  if (solver) {
    if (solver->success) {
      rep.solver_point = solver->u;
      if (!contains(space, rep.common_fixed_points, solver->u)) {
        flag("solver-point", "solver returned a point outside the exhaustive fixed-point set", {solver->u});
      }
    } else if (rep.certified && !rep.common_fixed_points.empty()) {
      flag("solver-point", "solver failed although the condition holds on every tuple", {solver->trace.iterates.back()});
    }
  }

  if (rep.certified) {
    // (b) a certified condition promises a unique fixed point
    for (std::size_t m = 0; m < rep.fixed_points.size(); ++m) {
      if (rep.fixed_points[m].size() != 1) {
        flag("uniqueness",
             "map " + std::to_string(m + 1) + " has " + std::to_string(rep.fixed_points[m].size()) +
                 " fixed points although the condition holds",
             rep.fixed_points[m]);
      }
    }
    if (rep.common_fixed_points.size() != 1) {
      flag("uniqueness", std::to_string(rep.common_fixed_points.size()) + " common fixed points", rep.common_fixed_points);
    }
    // (c) degeneracy: a fixed point plus the condition forces a constant map
    for (std::size_t m = 0; m < members.size(); ++m) {
      for (const auto& u : rep.fixed_points[m]) {
        for (const auto& x : space.domain().enumerate()) {
          if (space.g(members[m](x), u, u) > abs_tol) {
            flag("degeneracy", "map " + std::to_string(m + 1) + " is certified, fixes u and moves x off u", {x, u});
            break;
          }
        }
      }
    }
  }

  // (d) the sampled verifier can only underestimate
  if (sampled) {
    if (sampled->min_lambda > rep.exhaustive.min_lambda * (1.0 + space.tolerance().rel_tol) + abs_tol) {
      flag("sampled-estimate",
           "sampled min_lambda " + format_double(sampled->min_lambda) + " exceeds exhaustive " +
               format_double(rep.exhaustive.min_lambda),
           {});
    }
    if (sampled->status == ConditionStatus::SatisfiedWithLambda && !rep.certified) {
      std::vector<Point> w;
      if (rep.exhaustive.witness) w = {rep.exhaustive.witness->x, rep.exhaustive.witness->y, rep.exhaustive.witness->z};
      flag("sampled-verdict",
           "sampled verifier reports satisfied, exhaustive min_lambda is " + format_double(rep.exhaustive.min_lambda),
           std::move(w));
    }
  }
  return rep;
}

}  // namespace gfix
