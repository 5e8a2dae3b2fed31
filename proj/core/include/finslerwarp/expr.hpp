#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "finslerwarp/jet.hpp"

namespace fw {

// Expression tree for user formulas in the two variables r and s.
//
// Grammar (whitespace insignificant, ASCII only):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('-')? power
//   power  := atom ('^' number)?
//   atom   := number | 'r' | 's' | func '(' expr ')' | '(' expr ')'
//   func   := sqrt | exp | log | sin | cos
//   number := digits ('.' digits)? (('e'|'E') ('+'|'-')? digits)?
//
// Exponents must be number literals; write exp(g*log(f)) for general f^g.
// Unary minus binds looser than '^', so -s^2 parses as -(s^2).
class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  enum class Kind { number, var_r, var_s, negate, add, sub, mul, div, pow, call };
  enum class Func { sqrt_fn, exp_fn, log_fn, sin_fn, cos_fn };

  struct Node {
    Kind kind;
    double number = 0.0;       // Kind::number, and pow exponent
    Func func = Func::sqrt_fn; // Kind::call
    NodePtr lhs;
    NodePtr rhs;
    std::size_t offset = 0;    // byte offset in the source text
  };

  const Node& root() const { return *root_; }
  const std::string& text() const { return text_; }

  friend Expr parse(std::string_view text);

 private:
  Expr(NodePtr root, std::string text)
      : root_(std::move(root)), text_(std::move(text)) {}

  NodePtr root_;
  std::string text_;
};

// Throws ParseError (parse_syntax / parse_unknown_identifier /
// parse_nonconstant_exponent) with the byte offset of the offending token.
Expr parse(std::string_view text);

// Plain binary64 evaluation. Domain violations (sqrt/log of a non-positive
// value, division by zero, non-integer power of a non-positive base) throw
// Error(eval_domain) quoting the offending subexpression.
double eval_scalar(const Expr& e, double r, double s);

// Evaluation over jets seeded at (r0, s0); coefficients are the exact
// partials scaled by factorials.
Jet eval_jet(const Expr& e, double r0, double s0, JetOrder order);

// Source reconstruction used in error messages and reports.
std::string to_string(const Expr& e);

}  // namespace fw
