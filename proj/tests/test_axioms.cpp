#include <doctest.h>

#include <cmath>
#include <vector>

#include "gfix/axioms.hpp"
#include "gfix/spaces.hpp"
#include "support.hpp"

using namespace gfix;

namespace {

// Two points {a=0, b=1}: G(a,a,b) = 1 and G(a,b,b) = 2 under every permutation.
// A G-metric that is not symmetric.
GSpace lopsided_pair() {
  TablePayload t{2, std::vector<double>(8, 0.0)};
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      for (std::size_t z = 0; z < 2; ++z) {
        const int bs = static_cast<int>(x + y + z);
        t.at(x, y, z) = bs == 0 || bs == 3 ? 0.0 : (bs == 1 ? 1.0 : 2.0);
      }
  return load_table(t);
}

}  // namespace

TEST_CASE("perimeter and max constructions satisfy every axiom") {
  const std::vector<GSpace> spaces = {
      build_perimeter(BaseMetric::absolute(), Domain::interval(0, 1)),
      build_max(BaseMetric::absolute(), Domain::interval(0, 1)),
      build_perimeter(BaseMetric::euclidean(), Domain::box({0, 0}, {1, 1})),
      build_max(BaseMetric::euclidean(), Domain::box({0, 0}, {1, 1})),
  };
  for (const auto& s : spaces) {
    const AxiomReport r = check_axioms(s, 3000, 42);
    CHECK_MESSAGE(r.all_passed(), s.name());
    CHECK_FALSE(r.exhaustive);
    CHECK(check_symmetry(s, 3000, 42).symmetric);
  }
}

TEST_CASE("small finite spaces are checked exhaustively") {
  const AxiomReport r = check_axioms(build_discrete(4), 10, 1);
  CHECK(r.exhaustive);
  CHECK(r.all_passed());
  CHECK(r[Axiom::G5].checked == 4 * 4 * 4 * 4);
  // G2 worst is the smallest G(x,x,y) over distinct pairs.
  CHECK(r[Axiom::G2].worst == 1.0);
}

TEST_CASE("an all-zero table violates G2 with a reproducible witness") {
  const GSpace zero = load_table({3, std::vector<double>(27, 0.0)});
  const AxiomReport r = check_axioms(zero, 10, 1);
  CHECK_FALSE(r.all_passed());
  const auto& g2 = r[Axiom::G2];
  CHECK_FALSE(g2.passed);
  REQUIRE(g2.witness.size() == 2);
  CHECK(witness_violates(zero, g2));
  CHECK(r[Axiom::G1].passed);
}

TEST_CASE("a broken permutation entry trips G4") {
  std::mt19937_64 rng(9);
  TablePayload t = testing::random_line_table(3, rng);
  t.at(0, 1, 2) += 0.5;
  const GSpace s = load_table(t);
  const AxiomReport r = check_axioms(s, 10, 1);
  CHECK_FALSE(r[Axiom::G4].passed);
  CHECK(r[Axiom::G4].worst == doctest::Approx(0.5));
  CHECK(witness_violates(s, r[Axiom::G4]));
}

TEST_CASE("shrinking G(x,y,z) below G(x,x,y) trips G3") {
  TablePayload t{3, std::vector<double>(27, 0.0)};
  // Discrete-style values, with every permutation of {0,1,2} lowered to 0.5.
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y)
      for (std::size_t z = 0; z < 3; ++z) {
        const bool constant = x == y && y == z;
        const bool all_distinct = x != y && y != z && x != z;
        t.at(x, y, z) = constant ? 0.0 : (all_distinct ? 0.5 : 1.0);
      }
  const GSpace s = load_table(t);
  const AxiomReport r = check_axioms(s, 10, 1);
  CHECK_FALSE(r[Axiom::G3].passed);
  CHECK(r[Axiom::G3].worst == doctest::Approx(0.5));
  CHECK(witness_violates(s, r[Axiom::G3]));
  CHECK(r[Axiom::G4].passed);
}

TEST_CASE("a valid G-metric need not be symmetric") {
  const GSpace s = lopsided_pair();
  CHECK(check_axioms(s, 10, 1).all_passed());
  const SymmetryReport sym = check_symmetry(s, 10, 1);
  CHECK_FALSE(sym.symmetric);
  CHECK(sym.worst == 1.0);
}

TEST_CASE("witnesses from passing reports do not violate") {
  const GSpace s = testing::unit_perimeter();
  const AxiomReport r = check_axioms(s, 500, 3);
  for (const auto& a : r.axioms) CHECK_FALSE(witness_violates(s, a));
}

TEST_CASE("axiom reports are reproducible from the seed") {
  const GSpace s = testing::unit_perimeter();
  const AxiomReport a = check_axioms(s, 500, 11);
  const AxiomReport b = check_axioms(s, 500, 11);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(a.axioms[i].worst == b.axioms[i].worst);
    CHECK(a.axioms[i].witness == b.axioms[i].witness);
  }
  CHECK_THROWS_AS(check_axioms(s, 0, 1), InputError);
}

TEST_CASE("all four characterizations agree on x_n = 2^-n") {
  const GSpace s = testing::unit_perimeter();
  std::vector<Point> seq;
  for (int n = 0; n <= 60; ++n) seq.push_back(Point::real(std::ldexp(1.0, -n)));
  const ConvergenceReport r = check_convergence_equivalence(s, seq, Point::real(0.0));
  CHECK(r.agree);
  CHECK(r.converges);
  REQUIRE(r.common_index);
  // 4 * 2^-n <= 1e-12 first at n = 42.
  CHECK(*r.common_index == 42);
}

TEST_CASE("all four characterizations agree on an oscillating sequence") {
  const GSpace s = testing::unit_perimeter();
  std::vector<Point> seq;
  for (int n = 0; n <= 60; ++n) seq.push_back(Point::real(n % 2 ? 1.0 : 0.0));
  const ConvergenceReport r = check_convergence_equivalence(s, seq, Point::real(0.0));
  CHECK(r.agree);
  CHECK_FALSE(r.converges);
  CHECK_FALSE(r.common_index);
}

TEST_CASE("a sequence converging elsewhere does not converge to 0") {
  const GSpace s = testing::unit_perimeter();
  std::vector<Point> seq;
  for (int n = 0; n <= 60; ++n) seq.push_back(Point::real(0.5 + std::ldexp(0.25, -n)));
  const ConvergenceReport r = check_convergence_equivalence(s, seq, Point::real(0.0));
  CHECK(r.agree);
  CHECK_FALSE(r.converges);
  CHECK(check_convergence_equivalence(s, seq, Point::real(0.5)).converges);
}
