#include <doctest.h>

#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "gfix/exprparse.hpp"

using namespace gfix;

namespace {

// Test-only evaluator working straight off the text, with no tree in between.
class Reference {
 public:
  Reference(const std::string& src, double x, double y) : s_(src), x_(x), y_(y) {}

  double run() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) throw std::runtime_error("trailing input");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        const double d = unary();
        if (std::abs(d) <= 1e-300) throw std::domain_error("division");
        v /= d;
      } else {
        return v;
      }
    }
  }
  double unary() { return eat('-') ? -unary() : primary(); }
  double primary() {
    skip();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) throw std::runtime_error("expected )");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.') {
      std::size_t used = 0;
      const double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return v;
    }
    std::string id;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) id += s_[pos_++];
    if (id == "x") return x_;
    if (id == "y") return y_;
    if (!eat('(')) throw std::runtime_error("expected (");
    const double a = expr();
    if (id == "abs" || id == "sqrt") {
      eat(')');
      if (id == "abs") return std::abs(a);
      if (a < 0) throw std::domain_error("sqrt");
      return std::sqrt(a);
    }
    eat(',');
    const double b = expr();
    eat(')');
    return id == "min" ? std::min(a, b) : std::max(a, b);
  }

  std::string s_;
  std::size_t pos_ = 0;
  double x_, y_;
};

Expr random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
  switch (pick(rng)) {
    case 0: {
      std::uniform_int_distribution<int> n(0, 40);
      return Expr::number(n(rng) / 8.0);
    }
    case 1: return Expr::variable("x", 0);
    case 2: return Expr::variable("y", 1);
    case 3: return Expr::negate(random_tree(rng, depth - 1));
    case 4: return Expr::binary(Expr::Kind::Add, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 5: return Expr::binary(Expr::Kind::Subtract, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 6: return Expr::binary(Expr::Kind::Multiply, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 7: return Expr::binary(Expr::Kind::Divide, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    case 8: {
      const auto fn = std::uniform_int_distribution<int>(0, 1)(rng) ? Expr::Function::Abs : Expr::Function::Sqrt;
      return Expr::call(fn, {random_tree(rng, depth - 1)});
    }
    default: {
      const auto fn = std::uniform_int_distribution<int>(0, 1)(rng) ? Expr::Function::Min : Expr::Function::Max;
      return Expr::call(fn, {random_tree(rng, depth - 1), random_tree(rng, depth - 1)});
    }
  }
}

}  // namespace

TEST_CASE("x/2 parses to a division node") {
  const Expr e = parse_expression("x/2");
  CHECK(e.kind() == Expr::Kind::Divide);
  const auto kids = e.children();
  REQUIRE(kids.size() == 2);
  CHECK(kids[0].kind() == Expr::Kind::Variable);
  CHECK(kids[0].name() == "x");
  CHECK(kids[1].kind() == Expr::Kind::Number);
  CHECK(kids[1].value() == 2.0);
  CHECK(e.evaluate({1.0}) == 0.5);
}

TEST_CASE("max(x, 1-x) is a call with two children") {
  const Expr e = parse_expression("max(x, 1-x)");
  CHECK(e.kind() == Expr::Kind::Call);
  CHECK(e.function() == Expr::Function::Max);
  CHECK(e.children().size() == 2);
  CHECK(e.evaluate({0.3}) == doctest::Approx(0.7));
}

TEST_CASE("syntax errors carry a byte offset") {
  try {
    (void)parse_expression("x + * 2");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_expression("z + 1"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("foo(x)"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("(x"), SyntaxError);
  CHECK_THROWS_AS(parse_expression("x 2"), SyntaxError);
  CHECK_THROWS_AS(parse_expression(""), SyntaxError);
  CHECK_THROWS_AS(parse_expression("min(x)"), SyntaxError);
}

TEST_CASE("precedence and associativity") {
  CHECK(parse_expression("1 - 2 - 3").evaluate({}) == -4.0);
  CHECK(parse_expression("8 / 4 / 2").evaluate({}) == 1.0);
  CHECK(parse_expression("2 + 3 * 4").evaluate({}) == 14.0);
  CHECK(parse_expression("-2 * 3").evaluate({}) == -6.0);
  CHECK(parse_expression("--x").evaluate({5.0}) == 5.0);
  CHECK(parse_expression("1.5e2 + .5").evaluate({}) == 150.5);
}

TEST_CASE("evaluation errors") {
  CHECK(parse_expression("abs(x-1)").evaluate({0.25}) == 0.75);
  CHECK_THROWS_AS(parse_expression("1/x").evaluate({0.0}), EvaluationError);
  CHECK_THROWS_AS(parse_expression("1/x").evaluate({1e-301}), EvaluationError);
  CHECK(parse_expression("1/x").evaluate({1e-299}) == doctest::Approx(1e299));
  CHECK_THROWS_AS(parse_expression("sqrt(x)").evaluate({-1.0}), EvaluationError);
  CHECK_THROWS_AS(parse_expression("x + y").evaluate({1.0}), EvaluationError);
}

TEST_CASE("custom variable lists bind by position") {
  const Expr e = parse_expression("i * j - l", {"i", "j", "l"});
  CHECK(e.evaluate({2.0, 3.0, 1.0}) == 5.0);
  CHECK_THROWS_AS(parse_expression("x", {"i"}), SyntaxError);
}

TEST_CASE("parse-print-parse is idempotent on 100 generated expressions") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 100; ++i) {
    const Expr original = random_tree(rng, 5);
    const std::string printed = original.to_string();
    const Expr reparsed = parse_expression(printed);
    CHECK_MESSAGE(reparsed == original, printed);
    CHECK(reparsed.to_string() == printed);
  }
}

TEST_CASE("evaluation agrees with a direct text evaluator") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    const Expr e = random_tree(rng, 4);
    const std::string text = e.to_string();
    for (int b = 0; b < 5; ++b) {
      const double x = u(rng), y = u(rng);
      double got = 0.0, want = 0.0;
      bool got_err = false, want_err = false;
      try {
        got = e.evaluate({x, y});
      } catch (const EvaluationError&) {
        got_err = true;
      }
      try {
        want = Reference(text, x, y).run();
      } catch (const std::domain_error&) {
        want_err = true;
      }
      CHECK_MESSAGE(got_err == want_err, text);
      if (!got_err && !want_err) {
        ++compared;
        if (std::isfinite(want)) {
          CHECK_MESSAGE(got == want, text);
        }
      }
    }
  }
  CHECK(compared > 1000);
}
