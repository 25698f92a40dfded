#include "gfix/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "gfix/core.hpp"

namespace gfix {

namespace sequences {

Sequence constant(double value) {
  return [value](std::size_t) { return value; };
}

Sequence harmonic() {
  return [](std::size_t i) { return 1.0 / static_cast<double>(i); };
}

Sequence inverse_square() {
  return [](std::size_t i) {
    const double d = static_cast<double>(i);
    return 1.0 / (d * d);
  };
}

Sequence geometric(double ratio) {
  return [ratio](std::size_t i) { return std::pow(ratio, static_cast<double>(i)); };
}

Sequence from_values(std::vector<double> values) {
  return [values = std::move(values)](std::size_t i) {
    if (i == 0 || i > values.size()) {
      throw InputError("sequence has " + std::to_string(values.size()) + " values, index " + std::to_string(i) +
                       " requested");
    }
    return values[i - 1];
  };
}

}  // namespace sequences

std::vector<double> parse_sequence_text(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    double v = 0.0;
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc{} || ptr != e) {
      throw ConfigError("sequence line " + std::to_string(lineno) + " is not a number: '" + line + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> read_sequence_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open sequence file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_sequence_text(ss.str());
}

std::string_view series_verdict_name(SeriesKind kind, SeriesVerdict v) {
  const bool alpha = kind == SeriesKind::AlphaSeries;
  switch (v) {
    case SeriesVerdict::Holds: return alpha ? "alpha-series" : "lambda-sequence";
    case SeriesVerdict::Refuted: return alpha ? "not-alpha-series" : "not-lambda-sequence";
    case SeriesVerdict::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

double checked_term(const Sequence& seq, std::size_t i) {
  const double v = seq(i);
  if (!std::isfinite(v)) throw InputError("coefficient " + std::to_string(i) + " is not finite");
  if (v < 0.0) throw InputError("coefficient " + std::to_string(i) + " is negative: " + format_double(v));
  return v;
}

// averages[L-1] = sum / L for L = 1..horizon. `first_l` is the first L the
// bound must cover (n(lambda) for alpha-series, n(lambda)+1 for lambda-sequences).
SeriesCertificate certify(SeriesKind kind, const std::vector<double>& averages, double tol) {
  SeriesCertificate c;
  c.kind = kind;
  const std::size_t h = averages.size();
  c.horizon = h;
  const std::size_t window = h - std::max<std::size_t>(1, h / 4);  // 0-based start of the last quarter
  const auto win_begin = averages.begin() + static_cast<std::ptrdiff_t>(window);
  const double win_min = *std::min_element(win_begin, averages.end());
  const double win_max = *std::max_element(win_begin, averages.end());
  const double ceiling = 1.0 - tol;

  if (win_min >= ceiling) {
    c.verdict = SeriesVerdict::Refuted;
    c.max_average = win_max;
    c.note = "normalized sum >= 1 - tol for every L in [" + std::to_string(window + 1) + ", " + std::to_string(h) + "]";
    return c;
  }
  if (win_max >= ceiling) {
    c.verdict = SeriesVerdict::Undetermined;
    c.max_average = win_max;
    c.note = "normalized sum hovers within tol of 1 on [" + std::to_string(window + 1) + ", " + std::to_string(h) + "]";
    return c;
  }
  // A deficit L * (1 - s_L) that stops growing over the last half forces s_L -> 1.
  bool deficit_bounded = true;
  for (std::size_t L = h / 2 + 1; L < h && deficit_bounded; ++L) {
    const double prev = static_cast<double>(L) * (1.0 - averages[L - 1]);
    const double cur = static_cast<double>(L + 1) * (1.0 - averages[L]);
    deficit_bounded = cur <= prev + tol * static_cast<double>(L + 1);
  }
  if (deficit_bounded) {
    c.verdict = SeriesVerdict::Refuted;
    c.max_average = win_max;
    c.note = "L * (1 - s_L) is non-increasing on [" + std::to_string(h / 2 + 1) + ", " + std::to_string(h) +
             "], so s_L tends to 1";
    return c;
  }
  // Smallest start whose suffix maximum stays below 1 - tol.
  std::size_t start = h;
  double suffix_max = 0.0;
  double certified_max = 0.0;
  for (std::size_t L = h; L-- > 0;) {
    suffix_max = std::max(suffix_max, averages[L]);
    if (suffix_max >= ceiling) break;
    start = L;
    certified_max = suffix_max;
  }
  c.verdict = SeriesVerdict::Holds;
  c.max_average = certified_max;
  // A few ulps of headroom absorb rounding in the partial sums; lambda stays positive.
  c.lambda = std::max(certified_max * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()), tol);
  const std::size_t first_l = start + 1;
  c.n_lambda = kind == SeriesKind::AlphaSeries ? first_l : std::max<std::size_t>(1, first_l - 1);
  return c;
}

void require_horizon(std::size_t horizon) {
  if (horizon < 10) throw InputError("series horizon must be at least 10, got " + std::to_string(horizon));
}

}  // namespace

SeriesCertificate detect_alpha_series(const Sequence& a, std::size_t horizon, double tol) {
  require_horizon(horizon);
  std::vector<double> avg(horizon);
  double sum = 0.0;
  for (std::size_t L = 1; L <= horizon; ++L) {
    sum += checked_term(a, L);
    avg[L - 1] = sum / static_cast<double>(L);
  }
  return certify(SeriesKind::AlphaSeries, avg, tol);
}

SeriesCertificate detect_lambda_sequence(const Sequence& v, std::size_t horizon, double tol) {
  require_horizon(horizon);
  std::vector<double> avg(horizon);
  double sum = 0.0;
  for (std::size_t L = 1; L <= horizon; ++L) {
    if (L >= 2) sum += checked_term(v, L - 1);
    avg[L - 1] = sum / static_cast<double>(L);
  }
  return certify(SeriesKind::LambdaSequence, avg, tol);
}

SeriesCertificate detect_lambda_sequence(std::span<const double> values, double tol) {
  return detect_lambda_sequence(sequences::from_values({values.begin(), values.end()}), values.size() + 1, tol);
}

bool certificate_sound(const SeriesCertificate& cert, const Sequence& seq) {
  if (cert.verdict != SeriesVerdict::Holds) return false;
  if (!(cert.lambda > 0.0 && cert.lambda < 1.0) || cert.n_lambda < 1) return false;
  const bool alpha = cert.kind == SeriesKind::AlphaSeries;
  const std::size_t first = alpha ? cert.n_lambda : cert.n_lambda + 1;
  double sum = 0.0;
  for (std::size_t L = 1; L <= cert.horizon; ++L) {
    if (alpha) {
      sum += seq(L);
    } else if (L >= 2) {
      sum += seq(L - 1);
    }
    if (L >= first && sum > cert.lambda * static_cast<double>(L)) return false;
  }
  return true;
}

ProductBound product_bound(const Sequence& r, std::size_t n) {
  ProductBound out;
  double mantissa = 1.0;
  long exponent = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double ri = checked_term(r, i);
    if (ri >= 1.0) out.non_contractive = true;
    if (ri == 0.0) {
      mantissa = 0.0;
      continue;
    }
    int e = 0;
    mantissa = std::frexp(mantissa * ri, &e);
    exponent += e;
  }
  if (mantissa == 0.0) {
    out.value = 0.0;
    out.log2_value = -std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = std::ldexp(mantissa, static_cast<int>(std::clamp<long>(exponent, -2000, 2000)));
  out.log2_value = std::log2(mantissa) + static_cast<double>(exponent);
  return out;
}

double arithmetic_mean(const Sequence& r, std::size_t k) {
  if (k == 0) throw InputError("mean of zero terms");
  double s = 0.0;
  for (std::size_t i = 1; i <= k; ++i) s += checked_term(r, i);
  return s / static_cast<double>(k);
}

double geometric_mean(const Sequence& r, std::size_t k) {
  if (k == 0) throw InputError("mean of zero terms");
  const auto p = product_bound(r, k);
  if (p.value == 0.0 && std::isinf(p.log2_value)) return 0.0;
  return std::exp2(p.log2_value / static_cast<double>(k));
}

AmgmTail amgm_tail_bound(const Sequence& r, std::size_t n, std::size_t l, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1), got " + format_double(alpha));
  if (n < 1 || l < 1) throw InputError("amgm_tail_bound needs n >= 1 and l >= 1");
  AmgmTail t;
  t.closed_form = std::pow(alpha, static_cast<double>(n)) / (1.0 - alpha);
  bool means_below_alpha = true;
  double running = 0.0;
  for (std::size_t i = 1; i < n; ++i) running += checked_term(r, i);
  ProductBound prefix = product_bound(r, n - 1);
  double prod = prefix.value;
  for (std::size_t k = n; k <= n + l - 1; ++k) {
    const double rk = checked_term(r, k);
    running += rk;
    prod *= rk;
    const double mean = running / static_cast<double>(k);
    if (mean > alpha) means_below_alpha = false;
    t.geometric_sum += std::pow(alpha, static_cast<double>(k));
    t.product_sum += prod;
    t.amgm_sum += std::pow(mean, static_cast<double>(k));
  }
  const double slack = 1e-12;
  if (t.geometric_sum > t.closed_form * (1.0 + slack)) {
    throw std::logic_error("finite geometric sum exceeds its closed form");
  }
  t.chain_holds = t.product_sum <= t.amgm_sum * (1.0 + slack) + slack &&
                  (!means_below_alpha || t.amgm_sum <= t.geometric_sum * (1.0 + slack) + slack);
  return t;
}

std::string_view limsup_name(LimsupVerdict v) {
  switch (v) {
    case LimsupVerdict::Holds: return "holds";
    case LimsupVerdict::Fails: return "fails";
    case LimsupVerdict::Undetermined: return "undetermined";
  }
  return "?";
}

LimsupResult check_limsup_condition(const Sequence& delta, std::size_t horizon, double tol) {
  require_horizon(horizon);
  const std::size_t half = horizon / 2;
  const std::size_t three_quarters = horizon - horizon / 4;
  double prev_quarter = 0.0;
  double last_quarter = 0.0;
  for (std::size_t i = half + 1; i <= horizon; ++i) {
    const double v = checked_term(delta, i);
    if (i <= three_quarters) {
      prev_quarter = std::max(prev_quarter, v);
    } else {
      last_quarter = std::max(last_quarter, v);
    }
  }
  LimsupResult r;
  r.tail_sup = last_quarter;
  if (last_quarter >= 1.0 - tol) {
    r.verdict = LimsupVerdict::Fails;
  } else if (last_quarter > prev_quarter + tol) {
    r.verdict = LimsupVerdict::Undetermined;
  } else {
    r.verdict = LimsupVerdict::Holds;
  }
  return r;
}

bool is_non_increasing(const Sequence& v, std::size_t horizon, double tol) {
  double prev = checked_term(v, 1);
  for (std::size_t i = 2; i <= horizon; ++i) {
    const double cur = checked_term(v, i);
    if (cur > prev + tol) return false;
    prev = cur;
  }
  return true;
}

}  // namespace gfix
