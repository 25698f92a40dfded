#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gfix/core.hpp"
#include "gfix/maps.hpp"
#include "gfix/spaces.hpp"

namespace gfix::testing {

inline GSpace unit_perimeter(Tolerance tol = {}) {
  return build_perimeter(BaseMetric::absolute(), Domain::interval(0.0, 1.0), tol);
}

inline GSpace grid5_perimeter() { return build_perimeter(BaseMetric::absolute(), Domain::grid(0.0, 1.0, 5)); }

inline Map halve() { return Map::affine(0.5, {0.0}); }

// Perimeter G over n distinct random reals, tabulated.
inline TablePayload random_line_table(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> pts(n);
  for (auto& p : pts) p = u(rng);
  TablePayload t{n, std::vector<double>(n * n * n)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        t.at(x, y, z) = std::abs(pts[x] - pts[y]) + std::abs(pts[y] - pts[z]) + std::abs(pts[x] - pts[z]);
  return t;
}

// Reference G(x, 0, 0) for the perimeter space: 2|x|.
inline double perimeter_to_zero(double x) { return 2.0 * std::abs(x); }

}  // namespace gfix::testing
