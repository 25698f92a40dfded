#include "gfix/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gfix {

std::string_view axiom_name(Axiom a) {
  static constexpr std::string_view names[] = {"G1", "G2", "G3", "G4", "G5"};
  return names[static_cast<std::size_t>(a)];
}

bool AxiomReport::all_passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomStatus& s) { return s.passed; });
}

namespace {

class AxiomChecker {
 public:
  explicit AxiomChecker(const GSpace& space) : space_(space), tol_(space.tolerance()) {
    for (std::size_t i = 0; i < 5; ++i) status_[i].axiom = static_cast<Axiom>(i);
    status_[1].worst = std::numeric_limits<double>::infinity();
  }

  void g1(const Point& x) {
    auto& s = status_[0];
    const double v = space_.g(x, x, x);
    ++s.checked;
    if (v > s.worst || s.witness.empty()) {
      s.worst = v;
      s.witness = {x};
    }
    if (v > tol_.abs_tol) s.passed = false;
  }

  void g2(const Point& x, const Point& y) {
    if (space_.same(x, y)) return;
    auto& s = status_[1];
    const double v = space_.g(x, x, y);
    ++s.checked;
    if (v < s.worst) {
      s.worst = v;
      s.witness = {x, y};
    }
    if (v <= tol_.abs_tol) s.passed = false;
  }

  void g3(const Point& x, const Point& y, const Point& z) {
    if (space_.same(z, y)) return;
    auto& s = status_[2];
    const double lhs = space_.g(x, x, y);
    const double rhs = space_.g(x, y, z);
    ++s.checked;
    note_excess(s, lhs, rhs, {x, y, z});
  }

  void g4(const Point& x, const Point& y, const Point& z) {
    auto& s = status_[3];
    const double vals[] = {space_.g(x, y, z), space_.g(x, z, y), space_.g(y, x, z),
                           space_.g(y, z, x), space_.g(z, x, y), space_.g(z, y, x)};
    const auto [lo, hi] = std::minmax_element(std::begin(vals), std::end(vals));
    const double spread = *hi - *lo;
    ++s.checked;
    if (spread > s.worst || s.witness.empty()) {
      s.worst = spread;
      s.witness = {x, y, z};
    }
    if (spread > tol_.abs_tol) s.passed = false;
  }

  void g5(const Point& x, const Point& y, const Point& z, const Point& a) {
    auto& s = status_[4];
    const double lhs = space_.g(x, y, z);
    const double rhs = space_.g(x, a, a) + space_.g(a, y, z);
    ++s.checked;
    note_excess(s, lhs, rhs, {x, y, z, a});
  }

  std::array<AxiomStatus, 5> finish() {
    if (status_[1].checked == 0) status_[1].worst = 0.0;
    return status_;
  }

 private:
  void note_excess(AxiomStatus& s, double lhs, double rhs, std::vector<Point> witness) {
    const double excess = lhs - rhs;
    if (excess > s.worst || s.witness.empty()) {
      s.worst = excess;
      s.witness = std::move(witness);
    }
    if (!tol_.leq(lhs, rhs)) s.passed = false;
  }

  const GSpace& space_;
  Tolerance tol_;
  std::array<AxiomStatus, 5> status_{};
};

bool use_exhaustive(const GSpace& space) {
  const auto& d = space.domain();
  return d.enumerable() && d.size() <= kExhaustiveAxiomPoints;
}

}  // namespace

AxiomReport check_axioms(const GSpace& space, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw InputError("sample_count must be at least 1");
  AxiomChecker check(space);
  AxiomReport report;
  report.sample_count = sample_count;
  report.seed = seed;
  report.exhaustive = use_exhaustive(space);

  if (report.exhaustive) {
    const auto pts = space.domain().enumerate();
    for (const auto& x : pts) {
      check.g1(x);
      for (const auto& y : pts) {
        check.g2(x, y);
        for (const auto& z : pts) {
          check.g3(x, y, z);
          check.g4(x, y, z);
          for (const auto& a : pts) check.g5(x, y, z, a);
        }
      }
    }
  } else {
    std::mt19937_64 rng(seed);
    const auto& d = space.domain();
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Point x = d.sample(rng);
      const Point y = d.sample(rng);
      const Point z = d.sample(rng);
      const Point a = d.sample(rng);
      check.g1(x);
      check.g2(x, y);
      check.g3(x, y, z);
      check.g4(x, y, z);
      check.g5(x, y, z, a);
    }
  }
  report.axioms = check.finish();
  return report;
}

bool witness_violates(const GSpace& space, const AxiomStatus& s) {
  const auto& w = s.witness;
  const auto& tol = space.tolerance();
  switch (s.axiom) {
    case Axiom::G1:
      return w.size() == 1 && space.g(w[0], w[0], w[0]) > tol.abs_tol;
    case Axiom::G2:
      return w.size() == 2 && !space.same(w[0], w[1]) && space.g(w[0], w[0], w[1]) <= tol.abs_tol;
    case Axiom::G3:
      return w.size() == 3 && !space.same(w[2], w[1]) && !tol.leq(space.g(w[0], w[0], w[1]), space.g(w[0], w[1], w[2]));
    case Axiom::G4: {
      if (w.size() != 3) return false;
      AxiomChecker c(space);
      c.g4(w[0], w[1], w[2]);
      return !c.finish()[3].passed;
    }
    case Axiom::G5:
      return w.size() == 4 &&
             !tol.leq(space.g(w[0], w[1], w[2]), space.g(w[0], w[3], w[3]) + space.g(w[3], w[1], w[2]));
  }
  return false;
}

SymmetryReport check_symmetry(const GSpace& space, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw InputError("sample_count must be at least 1");
  SymmetryReport r;
  r.seed = seed;
  r.exhaustive = use_exhaustive(space);
  auto visit = [&](const Point& x, const Point& y) {
    const double gap = std::abs(space.g(x, y, y) - space.g(x, x, y));
    ++r.checked;
    if (gap > r.worst || r.witness.empty()) {
      r.worst = gap;
      r.witness = {x, y};
    }
  };
  if (r.exhaustive) {
    const auto pts = space.domain().enumerate();
    for (const auto& x : pts)
      for (const auto& y : pts) visit(x, y);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < sample_count; ++i) {
      const Point x = space.domain().sample(rng);
      const Point y = space.domain().sample(rng);
      visit(x, y);
    }
  }
  r.symmetric = r.worst <= space.tolerance().abs_tol;
  return r;
}

std::string_view characterization_name(Characterization c) {
  switch (c) {
    case Characterization::PairTail: return "G(x,x_n,x_m)";
    case Characterization::InducedMetric: return "d_G(x_n,x)";
    case Characterization::LimitFirst: return "G(x,x_n,x_n)";
    case Characterization::LimitRepeated: return "G(x_n,x,x)";
  }
  return "?";
}

ConvergenceReport check_convergence_equivalence(const GSpace& space, std::span<const Point> seq,
                                                const Point& limit) {
  if (seq.empty()) throw InputError("convergence check needs a nonempty sequence");
  const std::size_t len = seq.size();
  const double tol = space.tolerance().abs_tol;

  // values[c][n] is the n-th tail quantity of characterization c.
  std::array<std::vector<double>, 4> values;
  for (auto& v : values) v.resize(len);
  for (std::size_t n = 0; n < len; ++n) {
    double pair = 0.0;
    for (std::size_t m = n; m < len; ++m) pair = std::max(pair, space.g(limit, seq[n], seq[m]));
    values[0][n] = pair;
    values[1][n] = space.induced(seq[n], limit);
    values[2][n] = space.g(limit, seq[n], seq[n]);
    values[3][n] = space.g(seq[n], limit, limit);
  }

  ConvergenceReport r;
  r.window_start = len - std::max<std::size_t>(1, len / 4);
  for (std::size_t c = 0; c < 4; ++c) {
    auto& t = r.tails[c];
    t.which = static_cast<Characterization>(c);
    std::size_t settle = len;
    while (settle > 0 && values[c][settle - 1] <= tol) --settle;
    if (settle < len) t.settles_at = settle;
    t.window_max = *std::max_element(values[c].begin() + static_cast<std::ptrdiff_t>(r.window_start), values[c].end());
    t.converges = t.settles_at.has_value() && *t.settles_at <= r.window_start;
  }
  r.converges = r.tails[0].converges;
  r.agree = std::all_of(r.tails.begin(), r.tails.end(),
                        [&](const CharacterizationTail& t) { return t.converges == r.converges; });
  if (r.agree && r.converges) {
    std::size_t common = 0;
    for (const auto& t : r.tails) common = std::max(common, *t.settles_at);
    r.common_index = common;
  }
  return r;
}

}  // namespace gfix
