#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gfix/error.hpp"

namespace gfix {

// A real sequence indexed from 1.
using Sequence = std::function<double(std::size_t)>;

namespace sequences {

Sequence constant(double value);
Sequence harmonic();         // 1/i
Sequence inverse_square();   // 1/i^2
Sequence geometric(double ratio);  // ratio^i
// Values beyond the end throw InputError.
Sequence from_values(std::vector<double> values);

}  // namespace sequences

// One value per line; blank lines and lines starting with '#' are skipped.
std::vector<double> parse_sequence_text(const std::string& text);
std::vector<double> read_sequence_file(const std::string& path);

enum class SeriesKind { AlphaSeries, LambdaSequence };
enum class SeriesVerdict { Holds, Refuted, Undetermined };

std::string_view series_verdict_name(SeriesKind kind, SeriesVerdict v);

struct SeriesCertificate {
  SeriesKind kind = SeriesKind::AlphaSeries;
  SeriesVerdict verdict = SeriesVerdict::Undetermined;
  double lambda = 0.0;        // witness in (0, 1) when verdict == Holds
  std::size_t n_lambda = 0;   // witness n(lambda)
  std::size_t horizon = 0;    // L_max
  double max_average = 0.0;   // max of the normalized sums over the certified range
  std::string note;           // refutation or reason for undetermined
};

inline constexpr double kSeriesTol = 1e-12;

// Sum_{i<=L} a_i <= lambda * L for every L >= n(lambda), checked up to `horizon`.
SeriesCertificate detect_alpha_series(const Sequence& a, std::size_t horizon, double tol = kSeriesTol);

// Sum_{i<=L-1} v_i <= lambda * L for every L >= n(lambda) + 1.
SeriesCertificate detect_lambda_sequence(const Sequence& v, std::size_t horizon, double tol = kSeriesTol);
SeriesCertificate detect_lambda_sequence(std::span<const double> values, double tol = kSeriesTol);

// Re-checks a Holds certificate against the raw partial sums.
bool certificate_sound(const SeriesCertificate& cert, const Sequence& seq);

struct ProductBound {
  double value = 1.0;     // C_n = prod_{i<=n} r_i
  double log2_value = 0;  // log2 C_n (-inf when some r_i = 0)
  bool non_contractive = false;  // some r_i >= 1
};

// Tracked as mantissa * 2^exponent, so neither underflow nor rounding of
// exact binary fractions occurs.
ProductBound product_bound(const Sequence& r, std::size_t n);

struct AmgmTail {
  double closed_form = 0.0;    // alpha^n / (1 - alpha)
  double geometric_sum = 0.0;  // sum_{k=n}^{n+l-1} alpha^k
  double product_sum = 0.0;    // sum_{k=n}^{n+l-1} C_k
  double amgm_sum = 0.0;       // sum_{k=n}^{n+l-1} (mean_{i<=k} r_i)^k
  // product_sum <= amgm_sum, and amgm_sum <= geometric_sum whenever every mean is <= alpha.
  bool chain_holds = true;
};

AmgmTail amgm_tail_bound(const Sequence& r, std::size_t n, std::size_t l, double alpha);

double arithmetic_mean(const Sequence& r, std::size_t k);
double geometric_mean(const Sequence& r, std::size_t k);

enum class LimsupVerdict { Holds, Fails, Undetermined };

std::string_view limsup_name(LimsupVerdict v);

struct LimsupResult {
  LimsupVerdict verdict = LimsupVerdict::Undetermined;
  double tail_sup = 0.0;  // sup over the last quarter of the horizon
};

// limsup_{i -> inf} delta(i) < 1, judged from the tail of 1..horizon: the last
// quarter must stay below 1 - tol and not rise above the quarter before it.
LimsupResult check_limsup_condition(const Sequence& delta, std::size_t horizon, double tol = kSeriesTol);

bool is_non_increasing(const Sequence& v, std::size_t horizon, double tol = kSeriesTol);

}  // namespace gfix
