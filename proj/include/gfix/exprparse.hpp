#pragma once

// Tiny arithmetic expression language used by configs to define maps and
// base metrics:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | primary
//   primary := number | variable | func '(' expr (',' expr)* ')' | '(' expr ')'
//   func    := abs | sqrt | min | max
//
// Variables are resolved to slots at parse time from the caller's variable list.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gfix/error.hpp"

namespace gfix {

class Expr {
 public:
  enum class Kind { Number, Variable, Negate, Add, Subtract, Multiply, Divide, Call };
  enum class Function { Abs, Sqrt, Min, Max };

  static Expr number(double value);
  static Expr variable(std::string name, std::size_t slot);
  static Expr negate(Expr operand);
  static Expr binary(Kind op, Expr lhs, Expr rhs);
  static Expr call(Function fn, std::vector<Expr> args);

  Kind kind() const noexcept;
  double value() const noexcept;
  const std::string& name() const noexcept;
  std::size_t slot() const noexcept;
  Function function() const noexcept;
  std::vector<Expr> children() const;

  // values[slot] binds each variable.
  double evaluate(std::span<const double> values) const;
  double evaluate(std::initializer_list<double> values) const {
    return evaluate(std::span<const double>(values.begin(), values.size()));
  }

  // Fully parenthesized; parse(to_string()) reproduces the same tree.
  std::string to_string() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::string_view function_name(Expr::Function fn);
std::size_t function_arity(Expr::Function fn);

// Throws SyntaxError (with byte offset) on malformed input or unknown identifiers.
Expr parse_expression(std::string_view source, const std::vector<std::string>& variables = {"x", "y"});

// Smallest divisor magnitude accepted by evaluate().
inline constexpr double kDivisionGuard = 1e-300;

}  // namespace gfix
