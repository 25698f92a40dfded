#include "gfix/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace gfix {

std::string_view stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::BoundBelowTol: return "bound-below-tol";
    case StopReason::ResidualBelowTol: return "residual-below-tol";
    case StopReason::MaxIterations: return "max-iterations";
    case StopReason::NonContractive: return "non-contractive";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Certificate {
  double alpha = 0.0;
  std::size_t from = 0;
};

struct Scheme {
  IterationMode mode = IterationMode::Single;
  std::function<Map(std::size_t)> step;  // map taking x_n to x_{n+1}
  std::vector<Map> studied;              // maps whose (common) fixed point is sought
  std::optional<Certificate> certificate;
};

double tail_bound(double lambda, std::size_t n, double base) {
  if (!(lambda < 1.0) || std::isnan(lambda)) return kInf;
  if (base == 0.0) return 0.0;
  return std::pow(lambda, static_cast<double>(n)) / (1.0 - lambda) * base;
}

FixedPointResult run(const GSpace& space, const Scheme& scheme, const Point& x0, const Tolerance& tol) {
  tol.validate();
  space.require(x0);
  const std::size_t lookahead = scheme.mode == IterationMode::Single ? 1 : 2;

  FixedPointResult res;
  ConvergenceTrace& tr = res.trace;
  tr.mode = scheme.mode;
  tr.iterates.push_back(x0);

  auto extend_to = [&](std::size_t j) {
    while (tr.iterates.size() <= j) {
      const std::size_t from = tr.iterates.size() - 1;
      Point next = scheme.step(from)(tr.iterates.back());
      if (!space.domain().contains(next)) {
        throw DomainError("orbit escapes the domain at step " + std::to_string(from + 1) + ": " + next.to_string());
      }
      tr.iterates.push_back(next);
    }
  };
  auto residuals_at = [&](const Point& x) {
    std::vector<double> r;
    for (const auto& m : scheme.studied) {
      const Point mx = m(x);
      r.push_back(space.g(x, mx, mx));
    }
    return r;
  };
  auto observed_base = [&] {
    if (scheme.mode == IterationMode::Single) return tr.displacements.front();
    double b = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, tr.displacements.size()); ++i) b = std::max(b, tr.displacements[i]);
    return b;
  };

  double lam = kNaN;
  std::size_t ratios_seen = 0;
  std::size_t streak = 0;
  std::size_t n = 0;
  for (;; ++n) {
    extend_to(n + lookahead);
    const Point& xn = tr.iterates[n];
    const double disp = scheme.mode == IterationMode::Single
                            ? space.g(xn, tr.iterates[n + 1], tr.iterates[n + 1])
                            : space.g(xn, tr.iterates[n + 1], tr.iterates[n + 2]);
    tr.displacements.push_back(disp);
    const auto per_map = residuals_at(xn);
    const double residual = *std::max_element(per_map.begin(), per_map.end());
    tr.residual.push_back(residual);

    if (n >= 1 && tr.displacements[n - 1] > tol.abs_tol) {
      const double ratio = disp / tr.displacements[n - 1];
      lam = ratios_seen == 0 ? ratio : std::max(lam, ratio);
      ++ratios_seen;
      streak = (ratio >= 1.0 && disp > tol.abs_tol) ? streak + 1 : 0;
    }
    tr.lambda_hat.push_back(ratios_seen ? lam : kNaN);

    double running_bound = kInf;
    if (scheme.certificate) {
      if (n >= scheme.certificate->from) running_bound = tail_bound(scheme.certificate->alpha, n, tr.displacements.front());
    } else if (ratios_seen >= kWarmupRatios) {
      running_bound = tail_bound(lam, n, observed_base());
    }

    if (disp <= tol.abs_tol && residual <= tol.abs_tol) {
      tr.stop = StopReason::ResidualBelowTol;
    } else if (running_bound <= tol.abs_tol && residual <= tol.abs_tol) {
      tr.stop = StopReason::BoundBelowTol;
    } else if (streak >= kNonContractiveWindow) {
      tr.stop = StopReason::NonContractive;
    } else if (n >= tol.max_iterations) {
      tr.stop = StopReason::MaxIterations;
    } else {
      continue;
    }
    res.map_residuals = per_map;
    res.residual = residual;
    break;
  }

  // Drop lookahead iterates so iterates[i] lines up with row i.
  tr.iterates.resize(n + 1);
  res.u = tr.iterates[n];
  res.iterations = n;
  tr.lambda_final = ratios_seen ? lam : kNaN;
  res.contractive = !(ratios_seen && lam >= 1.0);

  tr.certified = scheme.certificate.has_value();
  const double final_lambda = tr.certified ? scheme.certificate->alpha : tr.lambda_final;
  tr.bound_base = tr.certified ? tr.displacements.front() : observed_base();
  tr.bound_from = tr.certified ? scheme.certificate->from : 0;
  tr.bound.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    tr.bound[i] = i < tr.bound_from ? kInf : tail_bound(final_lambda, i, tr.bound_base);
  }
  res.bound = tr.bound[n];
  res.success = res.residual <= tol.abs_tol &&
                (tr.stop == StopReason::ResidualBelowTol || tr.stop == StopReason::BoundBelowTol);
  return res;
}

}  // namespace

FixedPointResult picard_solve(const GSpace& space, const Map& t, const Point& x0, const Tolerance& tol) {
  Scheme s;
  s.mode = IterationMode::Single;
  s.step = [t](std::size_t) { return t; };
  s.studied = {t};
  return run(space, s, x0, tol);
}

FixedPointResult solve_iterate_power(const GSpace& space, const Map& t, std::size_t p, const Point& x0,
                                     const Tolerance& tol) {
  if (p < 1) throw InputError("iterate power p must be at least 1");
  FixedPointResult res = picard_solve(space, t.power(p), x0, tol);
  const Point tu = t(res.u);
  const double base = space.g(tu, res.u, res.u);
  res.base_map_residual = base;
  if (base > tol.abs_tol) {
    res.iterate_fixed_but_not_map_fixed = true;
    res.success = false;
    res.warnings.push_back("iterate-fixed-but-not-map-fixed: G(T u, u, u) = " + format_double(base));
  }
  return res;
}

FixedPointResult cyclic_triplet_solve(const GSpace& space, const Map& t, const Map& p, const Map& q, const Point& x0,
                                      const Tolerance& tol) {
  Scheme s;
  s.mode = IterationMode::Triplet;
  std::vector<Map> cycle{t, p, q};
  s.step = [cycle](std::size_t n) { return cycle[n % 3]; };
  s.studied = cycle;
  return run(space, s, x0, tol);
}

FixedPointResult family_solve(const GSpace& space, const MapFamily& family, const Point& x0,
                              const FamilyOptions& options, const Tolerance& tol) {
  if (options.probes.empty()) throw InputError("family_solve needs at least one probe index");
  Scheme s;
  s.mode = IterationMode::Family;
  s.step = [family](std::size_t n) { return family[n + 1]; };
  for (std::size_t i : options.probes) s.studied.push_back(family[i]);

  std::vector<std::string> warnings;
  if (options.coefficients) {
    const auto cert = detect_alpha_series(*options.coefficients, std::max<std::size_t>(10, options.coefficient_horizon));
    if (cert.verdict == SeriesVerdict::Holds) {
      s.certificate = Certificate{cert.lambda, cert.n_lambda};
    } else {
      warnings.push_back("coefficient certificate invalid (" +
                         std::string(series_verdict_name(cert.kind, cert.verdict)) +
                         "); falling back to the observed contraction rate");
    }
  }
  FixedPointResult res = run(space, s, x0, tol);
  res.warnings.insert(res.warnings.begin(), warnings.begin(), warnings.end());

  if (options.coefficients && res.trace.certified) {
    // D_n <= C_n * D_0 must hold along the orbit if the coefficients are honest.
    const auto& d = res.trace.displacements;
    double c = 1.0;
    for (std::size_t k = 1; k < d.size(); ++k) {
      c *= (*options.coefficients)(k);
      if (d[k] > c * d.front() + tol.abs_tol) {
        res.warnings.push_back("orbit displacement at n=" + std::to_string(k) +
                               " exceeds the coefficient product bound");
        break;
      }
    }
  }
  return res;
}

std::string trace_to_csv(const ConvergenceTrace& tr) {
  std::ostringstream os;
  const bool indexed = !tr.iterates.empty() && tr.iterates.front().indexed();
  const std::size_t dim = tr.iterates.empty() ? 1 : tr.iterates.front().dim();
  os << "n,";
  if (indexed) {
    os << "index,";
  } else if (dim == 2) {
    os << "x,y,";
  } else {
    os << "x,";
  }
  os << "d_n,lambda_hat,bound,residual\n";
  for (std::size_t n = 0; n < tr.iterates.size(); ++n) {
    os << n << ',';
    const Point& p = tr.iterates[n];
    if (indexed) {
      os << p.index() << ',';
    } else {
      for (std::size_t a = 0; a < p.dim(); ++a) os << format_double(p[a]) << ',';
    }
    os << format_double(tr.displacements[n]) << ',' << format_double(tr.lambda_hat[n]) << ','
       << format_double(tr.bound[n]) << ',' << format_double(tr.residual[n]) << '\n';
  }
  return os.str();
}

}  // namespace gfix
