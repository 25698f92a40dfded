#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gfix/core.hpp"
#include "gfix/maps.hpp"
#include "gfix/series.hpp"

namespace gfix {

enum class IterationMode { Single, Triplet, Family };

enum class StopReason { BoundBelowTol, ResidualBelowTol, MaxIterations, NonContractive };

std::string_view stop_reason_name(StopReason r);

// Ratios observed before the a-priori stopping rule is trusted.
inline constexpr std::size_t kWarmupRatios = 3;
// Consecutive non-contracting steps that confirm a non-contractive orbit.
inline constexpr std::size_t kNonContractiveWindow = 10;

// Per-step record of an orbit. Row n describes iterate x_n.
//
// displacements: d_n = G(x_n, x_{n+1}, x_{n+1}) in single mode,
//                D_n = G(x_n, x_{n+1}, x_{n+2}) in triplet/family mode.
// lambda_hat:    running max of displacement ratios up to step n (NaN before the first ratio).
// bound:         a-priori tail bound at n using the final contraction constant:
//                lambda^n / (1 - lambda) * base, base = d_0 (single),
//                r(x_0) = max(D_0, D_1, D_2) (triplet, uncertified family) or D_0
//                (certified family, lambda = alpha, finite only for n >= n(lambda)).
// residual:      G(x_n, M x_n, M x_n), maximized over the maps under study.
struct ConvergenceTrace {
  IterationMode mode = IterationMode::Single;
  std::vector<Point> iterates;
  std::vector<double> displacements;
  std::vector<double> lambda_hat;
  std::vector<double> bound;
  std::vector<double> residual;
  StopReason stop = StopReason::MaxIterations;
  double lambda_final = 0.0;  // NaN when no ratio was observed
  double bound_base = 0.0;
  bool certified = false;     // bound derived from a coefficient certificate
  std::size_t bound_from = 0; // first n with a finite bound
};

struct FixedPointResult {
  Point u;
  double residual = 0.0;              // max over all maps under study
  std::vector<double> map_residuals;  // per map (T,P,Q or family probes)
  std::size_t iterations = 0;
  double bound = 0.0;                 // trace.bound at the returned iterate
  bool success = false;
  bool contractive = true;            // observed lambda_hat < 1
  std::vector<std::string> warnings;

  // T^p mode: residual against T itself, and the flag raised when it exceeds tol.
  std::optional<double> base_map_residual;
  bool iterate_fixed_but_not_map_fixed = false;

  ConvergenceTrace trace;
};

// x_{n+1} = T x_n. Throws DomainError when the orbit leaves the carrier.
FixedPointResult picard_solve(const GSpace& space, const Map& t, const Point& x0, const Tolerance& tol);

// Picard iteration on T^p, followed by the residual check against T.
FixedPointResult solve_iterate_power(const GSpace& space, const Map& t, std::size_t p, const Point& x0,
                                     const Tolerance& tol);

// x_{3n+1} = T x_{3n}, x_{3n+2} = P x_{3n+1}, x_{3n+3} = Q x_{3n+2}.
FixedPointResult cyclic_triplet_solve(const GSpace& space, const Map& t, const Map& p, const Map& q, const Point& x0,
                                      const Tolerance& tol);

struct FamilyOptions {
  // r_i = delta(i, i+1, i+2). When present and an alpha-series, the bound uses its certificate.
  std::optional<Sequence> coefficients;
  std::size_t coefficient_horizon = 1000;
  std::vector<std::size_t> probes{1, 2, 3, 4, 5};
};

// x_n = T_n x_{n-1}.
FixedPointResult family_solve(const GSpace& space, const MapFamily& family, const Point& x0,
                              const FamilyOptions& options, const Tolerance& tol);

// Columns: n, coordinate(s) or index, d_n, lambda_hat, bound, residual.
std::string trace_to_csv(const ConvergenceTrace& trace);

}  // namespace gfix
