#include <doctest.h>

#include <cmath>
#include <random>

#include "gfix/spaces.hpp"
#include "support.hpp"

using namespace gfix;

TEST_CASE("perimeter construction sums the three pairwise distances") {
  const GSpace s = testing::unit_perimeter();
  CHECK(s.g(Point::real(1.0), Point::real(0.5), Point::real(0.25)) == 1.5);
  CHECK(s.g(Point::real(1.0), Point::real(0.5), Point::real(0.5)) == 1.0);
  CHECK(s.symmetric_flag().value_or(false));
}

TEST_CASE("max construction takes the largest pairwise distance") {
  const GSpace s = build_max(BaseMetric::absolute(), Domain::interval(0, 1));
  CHECK(s.g(Point::real(1.0), Point::real(0.5), Point::real(0.25)) == 0.75);
  const GSpace e = build_max(BaseMetric::euclidean(), Domain::box({0, 0}, {1, 1}));
  CHECK(e.g(Point::plane(0, 0), Point::plane(1, 1), Point::plane(0, 1)) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("discrete space is 0 on constant triples and 1 elsewhere") {
  const GSpace d = build_discrete(3);
  CHECK(d.g(Point::index(1), Point::index(1), Point::index(1)) == 0.0);
  CHECK(d.g(Point::index(0), Point::index(1), Point::index(1)) == 1.0);
  CHECK_THROWS_AS(build_discrete(0), ConfigError);
  CHECK_THROWS_AS((void)d.g(Point::index(3), Point::index(0), Point::index(0)), DomainError);
}

TEST_CASE("metric and carrier must match") {
  CHECK_THROWS_AS(build_perimeter(BaseMetric::absolute(), Domain::box({0, 0}, {1, 1})), ConfigError);
  CHECK_THROWS_AS(build_perimeter(BaseMetric::absolute(), Domain::finite(3)), ConfigError);
  CHECK_NOTHROW(build_perimeter(BaseMetric::euclidean(), Domain::box({0, 0}, {1, 1})));
}

TEST_CASE("expression metrics read x and y as the two points") {
  const BaseMetric m = BaseMetric::expression("abs(x - y) / (1 + abs(x - y))");
  CHECK(m(Point::real(0.0), Point::real(1.0)) == 0.5);
  const GSpace s = build_perimeter(m, Domain::interval(0, 1));
  CHECK(s.g(Point::real(0.0), Point::real(1.0), Point::real(1.0)) == 1.0);
}

TEST_CASE("tables validate size, finiteness and sign") {
  CHECK_THROWS_AS(load_table({2, std::vector<double>(7, 0.0)}), ConfigError);
  CHECK_THROWS_AS(load_table({1, {-1.0}}), ConfigError);
  CHECK_THROWS_AS(load_table({1, {std::nan("")}}), ConfigError);
  const GSpace t = load_table({1, {0.0}});
  CHECK(t.g(Point::index(0), Point::index(0), Point::index(0)) == 0.0);
}

TEST_CASE("table text round-trips and tabulate mirrors the source space") {
  std::mt19937_64 rng(5);
  const TablePayload t = testing::random_line_table(4, rng);
  const TablePayload back = parse_table_text(table_to_text(t));
  CHECK(back.n == t.n);
  CHECK(back.values == t.values);

  const GSpace grid = testing::grid5_perimeter();
  const TablePayload tab = tabulate(grid);
  REQUIRE(tab.n == 5);
  const GSpace loaded = load_table(tab);
  for (std::size_t x = 0; x < 5; ++x)
    for (std::size_t y = 0; y < 5; ++y)
      for (std::size_t z = 0; z < 5; ++z)
        CHECK(loaded.g(Point::index(x), Point::index(y), Point::index(z)) ==
              grid.g(grid.domain().at(x), grid.domain().at(y), grid.domain().at(z)));

  CHECK_THROWS_AS(parse_table_text("{\"n\": 1}"), ConfigError);
  CHECK_THROWS_AS(parse_table_text("not json"), ConfigError);
  CHECK_THROWS_AS(tabulate(testing::unit_perimeter()), ConfigError);
}

TEST_CASE("verify_metric finds a broken triangle inequality") {
  const BaseMetric squared = BaseMetric::expression("(x - y) * (x - y)");
  const MetricCheck bad = verify_metric(squared, Domain::interval(0, 1), 2000, 42);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failed_property == "triangle");
  CHECK(bad.witness.size() == 3);
  const MetricCheck good = verify_metric(BaseMetric::absolute(), Domain::interval(0, 1), 2000, 42);
  CHECK(good.ok);
}

TEST_CASE("build_space follows the recipe") {
  SpaceRecipe r;
  r.kind = SpaceKind::Max;
  r.metric = "euclidean";
  r.domain = Domain::box({0, 0}, {1, 1});
  CHECK(build_space(r).g(Point::plane(0, 0), Point::plane(0, 1), Point::plane(0, 0)) == 1.0);

  r.kind = SpaceKind::Perimeter;
  r.metric = "(x - y) * (x - y)";
  r.domain = Domain::interval(0, 1);
  r.verify_metric = true;
  CHECK_THROWS_AS(build_space(r), ConfigError);

  r = {};
  r.kind = SpaceKind::Discrete;
  r.point_count = 4;
  CHECK(build_space(r).domain().size() == 4);
}
