#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "gfix/series.hpp"

using namespace gfix;

TEST_CASE("constant 1/2 is an alpha-series with lambda 1/2") {
  const auto c = detect_alpha_series(sequences::constant(0.5), 1000);
  CHECK(c.verdict == SeriesVerdict::Holds);
  CHECK(std::abs(c.lambda - 0.5) <= 1e-12);
  CHECK(c.n_lambda == 1);
  CHECK(certificate_sound(c, sequences::constant(0.5)));
  CHECK(series_verdict_name(c.kind, c.verdict) == "alpha-series");
}

TEST_CASE("constant 1 is refuted") {
  const auto c = detect_alpha_series(sequences::constant(1.0), 1000);
  CHECK(c.verdict == SeriesVerdict::Refuted);
  CHECK(series_verdict_name(c.kind, c.verdict) == "not-alpha-series");
  CHECK_FALSE(certificate_sound(c, sequences::constant(1.0)));
}

TEST_CASE("1/i^2 is an alpha-series; partial sums stay below pi^2/6") {
  const Sequence a = sequences::inverse_square();
  const auto c = detect_alpha_series(a, 10000);
  REQUIRE(c.verdict == SeriesVerdict::Holds);
  CHECK(certificate_sound(c, a));
  // Oracle: s_L = sum/L < 1/2 from L = 4 on (s_3 = 49/108 is already below, s_1 = 1 is not).
  double sum = 0.0;
  for (std::size_t L = 1; L <= 10000; ++L) {
    sum += a(L);
    CHECK(sum < std::numbers::pi * std::numbers::pi / 6.0);
    if (L >= 4) CHECK(sum / static_cast<double>(L) < 0.5);
  }
  CHECK(c.n_lambda >= 2);  // L = 1 has average 1
}

TEST_CASE("harmonic terms average to zero and qualify") {
  const auto c = detect_alpha_series(sequences::harmonic(), 10000);
  CHECK(c.verdict == SeriesVerdict::Holds);
  CHECK(certificate_sound(c, sequences::harmonic()));
}

TEST_CASE("a window that touches 1 is undetermined, not certified") {
  // Averages equal 1 up to L = 800 and then decay: the last quarter straddles the ceiling.
  std::vector<double> v(1000, 0.0);
  for (std::size_t i = 0; i < 800; ++i) v[i] = 1.0;
  const auto c = detect_alpha_series(sequences::from_values(v), 1000);
  CHECK(c.verdict == SeriesVerdict::Undetermined);
  CHECK(series_verdict_name(c.kind, c.verdict) == "undetermined");
  CHECK_FALSE(c.note.empty());
}

TEST_CASE("bad input is refused") {
  CHECK_THROWS_AS(detect_alpha_series(sequences::constant(-0.1), 100), InputError);
  CHECK_THROWS_AS(detect_alpha_series(sequences::constant(0.5), 5), InputError);
  CHECK_THROWS_AS(detect_alpha_series(sequences::constant(std::nan("")), 100), InputError);
  CHECK_THROWS_AS(detect_alpha_series(sequences::from_values({0.5, 0.5}), 100), InputError);
}

TEST_CASE("lambda-sequence detection") {
  const auto g = detect_lambda_sequence(sequences::geometric(0.5), 1000);
  CHECK(g.verdict == SeriesVerdict::Holds);
  CHECK(certificate_sound(g, sequences::geometric(0.5)));

  const auto ones = detect_lambda_sequence(sequences::constant(1.0), 1000);
  CHECK(ones.verdict == SeriesVerdict::Refuted);
  CHECK(series_verdict_name(ones.kind, ones.verdict) == "not-lambda-sequence");

  const std::vector<double> zeros(50, 0.0);
  const auto z = detect_lambda_sequence(std::span<const double>(zeros));
  CHECK(z.verdict == SeriesVerdict::Holds);
  CHECK(z.lambda > 0.0);
  CHECK(z.lambda < 1.0);
}

TEST_CASE("sequence text parsing") {
  const auto v = parse_sequence_text("# header\n0.5\n\n  0.25 \n1e-3\n");
  REQUIRE(v.size() == 3);
  CHECK(v[2] == 1e-3);
  CHECK_THROWS_AS(parse_sequence_text("0.5\nabc\n"), ConfigError);
  CHECK_THROWS_AS(read_sequence_file("/nonexistent/seq.txt"), ConfigError);
}

TEST_CASE("product bound of r = 1/2 is exactly 2^-n, even past underflow") {
  for (std::size_t n : {0u, 1u, 10u, 100u, 1000u}) {
    const auto p = product_bound(sequences::constant(0.5), n);
    CHECK(p.value == std::ldexp(1.0, -static_cast<int>(n)));
    CHECK(p.log2_value == -static_cast<double>(n));
    CHECK_FALSE(p.non_contractive);
  }
  CHECK(product_bound(sequences::constant(0.5), 1100).log2_value == -1100.0);
  CHECK(product_bound(sequences::constant(1.0), 3).non_contractive);
  const auto zero = product_bound(sequences::from_values({0.5, 0.0, 0.5}), 3);
  CHECK(zero.value == 0.0);
}

TEST_CASE("AM-GM: geometric mean never exceeds arithmetic mean") {
  const std::vector<Sequence> seqs = {sequences::constant(0.5), sequences::harmonic(), sequences::inverse_square(),
                                      [](std::size_t i) { return 0.1 + 0.8 * ((i * 7919) % 13) / 13.0; }};
  for (const auto& r : seqs) {
    for (std::size_t k = 1; k <= 200; ++k) CHECK(geometric_mean(r, k) <= arithmetic_mean(r, k) + 1e-12);
  }
}

TEST_CASE("AM-GM tail bound closed form and chain") {
  const auto t = amgm_tail_bound(sequences::constant(0.5), 3, 50, 0.5);
  CHECK(t.closed_form == 0.25);
  CHECK(t.chain_holds);
  CHECK(t.product_sum <= t.amgm_sum + 1e-15);
  CHECK(t.amgm_sum <= t.geometric_sum + 1e-15);
  CHECK(t.geometric_sum <= t.closed_form);
  CHECK_THROWS_AS(amgm_tail_bound(sequences::constant(0.5), 3, 5, 1.0), InputError);
  CHECK_THROWS_AS(amgm_tail_bound(sequences::constant(0.5), 0, 5, 0.5), InputError);
}

TEST_CASE("limsup condition") {
  CHECK(check_limsup_condition(sequences::constant(0.9), 1000).verdict == LimsupVerdict::Holds);
  CHECK(check_limsup_condition(sequences::constant(1.0), 1000).verdict == LimsupVerdict::Fails);
  const Sequence rising = [](std::size_t i) { return 1.0 - 1.0 / static_cast<double>(i); };
  CHECK(check_limsup_condition(rising, 1000, 1e-12).verdict == LimsupVerdict::Undetermined);
  CHECK(limsup_name(LimsupVerdict::Holds) == "holds");
}

TEST_CASE("non-increasing check") {
  CHECK(is_non_increasing(sequences::harmonic(), 100));
  CHECK_FALSE(is_non_increasing([](std::size_t i) { return static_cast<double>(i); }, 10));
}

TEST_CASE("detection at L = 10^4 is fast") {
  const auto start = std::chrono::steady_clock::now();
  (void)detect_alpha_series(sequences::inverse_square(), 10000);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 1.0);
}
