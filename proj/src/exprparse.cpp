#include "gfix/exprparse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "gfix/core.hpp"

namespace gfix {

struct Expr::Node {
  Kind kind = Kind::Number;
  double value = 0.0;
  std::string name;
  std::size_t slot = 0;
  Function fn = Function::Abs;
  std::vector<Expr> children;
};

Expr Expr::number(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(std::string name, std::size_t slot) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  n->slot = slot;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negate;
  n->children.push_back(std::move(operand));
  return Expr(std::move(n));
}

Expr Expr::binary(Kind op, Expr lhs, Expr rhs) {
  if (op != Kind::Add && op != Kind::Subtract && op != Kind::Multiply && op != Kind::Divide) {
    throw InputError("Expr::binary needs an arithmetic operator");
  }
  auto n = std::make_shared<Node>();
  n->kind = op;
  n->children.push_back(std::move(lhs));
  n->children.push_back(std::move(rhs));
  return Expr(std::move(n));
}

Expr Expr::call(Function fn, std::vector<Expr> args) {
  if (args.size() != function_arity(fn)) {
    throw InputError(std::string(function_name(fn)) + " takes " + std::to_string(function_arity(fn)) +
                     " argument(s)");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Call;
  n->fn = fn;
  n->children = std::move(args);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
const std::string& Expr::name() const noexcept { return node_->name; }
std::size_t Expr::slot() const noexcept { return node_->slot; }
Expr::Function Expr::function() const noexcept { return node_->fn; }
std::vector<Expr> Expr::children() const { return node_->children; }

std::string_view function_name(Expr::Function fn) {
  switch (fn) {
    case Expr::Function::Abs: return "abs";
    case Expr::Function::Sqrt: return "sqrt";
    case Expr::Function::Min: return "min";
    case Expr::Function::Max: return "max";
  }
  return "?";
}

std::size_t function_arity(Expr::Function fn) {
  return fn == Expr::Function::Min || fn == Expr::Function::Max ? 2 : 1;
}

double Expr::evaluate(std::span<const double> values) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Number:
      return n.value;
    case Kind::Variable:
      if (n.slot >= values.size()) throw EvaluationError("unbound variable '" + n.name + "'");
      return values[n.slot];
    case Kind::Negate:
      return -n.children[0].evaluate(values);
    case Kind::Add:
      return n.children[0].evaluate(values) + n.children[1].evaluate(values);
    case Kind::Subtract:
      return n.children[0].evaluate(values) - n.children[1].evaluate(values);
    case Kind::Multiply:
      return n.children[0].evaluate(values) * n.children[1].evaluate(values);
    case Kind::Divide: {
      const double num = n.children[0].evaluate(values);
      const double den = n.children[1].evaluate(values);
      if (std::abs(den) <= kDivisionGuard) {
        throw EvaluationError("division by " + format_double(den) + " in '" + to_string() + "'");
      }
      return num / den;
    }
    case Kind::Call: {
      const double a = n.children[0].evaluate(values);
      switch (n.fn) {
        case Function::Abs:
          return std::abs(a);
        case Function::Sqrt:
          if (a < 0.0) throw EvaluationError("sqrt of negative value " + format_double(a));
          return std::sqrt(a);
        case Function::Min:
          return std::min(a, n.children[1].evaluate(values));
        case Function::Max:
          return std::max(a, n.children[1].evaluate(values));
      }
    }
  }
  return 0.0;
}

std::string Expr::to_string() const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Number:
      return format_double(n.value);
    case Kind::Variable:
      return n.name;
    case Kind::Negate:
      return "(-" + n.children[0].to_string() + ")";
    case Kind::Add:
    case Kind::Subtract:
    case Kind::Multiply:
    case Kind::Divide: {
      static constexpr const char* ops[] = {" + ", " - ", " * ", " / "};
      const auto op = ops[static_cast<int>(n.kind) - static_cast<int>(Kind::Add)];
      return "(" + n.children[0].to_string() + op + n.children[1].to_string() + ")";
    }
    case Kind::Call: {
      std::string s(function_name(n.fn));
      s += "(";
      for (std::size_t i = 0; i < n.children.size(); ++i) {
        if (i) s += ", ";
        s += n.children[i].to_string();
      }
      return s + ")";
    }
  }
  return {};
}

bool operator==(const Expr& a, const Expr& b) {
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Expr::Kind::Number:
      return x.value == y.value;
    case Expr::Kind::Variable:
      return x.name == y.name && x.slot == y.slot;
    case Expr::Kind::Call:
      if (x.fn != y.fn) return false;
      break;
    default:
      break;
  }
  return x.children == y.children;
}

namespace {

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  Expr run() {
    Expr e = expression();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expression() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Expr::Kind::Add, lhs, term());
      } else if (accept('-')) {
        lhs = Expr::binary(Expr::Kind::Subtract, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Expr::Kind::Multiply, lhs, unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Expr::Kind::Divide, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::negate(unary());
    return primary();
  }

  Expr primary() {
    skip_space();
    if (pos_ >= src_.size()) fail("expected operand, found end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expression();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("expected operand, found '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t count = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) {
      pos_ = start;
      fail("malformed number");
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t mark = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) {
        pos_ = mark;
        fail("malformed exponent");
      }
    }
    double v = 0.0;
    const char* first = src_.data() + start;
    auto [ptr, ec] = std::from_chars(first, src_.data() + pos_, v);
    if (ec != std::errc{} || ptr != src_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::number(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string id(src_.substr(start, pos_ - start));
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      static constexpr Expr::Function fns[] = {Expr::Function::Abs, Expr::Function::Sqrt, Expr::Function::Min,
                                               Expr::Function::Max};
      const auto it = std::find_if(std::begin(fns), std::end(fns),
                                   [&](Expr::Function f) { return function_name(f) == id; });
      if (it == std::end(fns)) {
        pos_ = start;
        fail("unknown function '" + id + "'");
      }
      ++pos_;
      std::vector<Expr> args;
      args.push_back(expression());
      while (accept(',')) args.push_back(expression());
      if (args.size() != function_arity(*it)) {
        fail(id + " takes " + std::to_string(function_arity(*it)) + " argument(s)");
      }
      expect(')');
      return Expr::call(*it, std::move(args));
    }
    const auto v = std::find(vars_.begin(), vars_.end(), id);
    if (v == vars_.end()) {
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    return Expr::variable(id, static_cast<std::size_t>(v - vars_.begin()));
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expression(std::string_view source, const std::vector<std::string>& variables) {
  return Parser(source, variables).run();
}

}  // namespace gfix
