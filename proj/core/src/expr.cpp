#include "finslerwarp/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

namespace fw {

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;
using Kind = Expr::Kind;
using Func = Expr::Func;

NodePtr make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr run() {
    if (text_.empty()) {
      throw ParseError(ErrorCode::parse_syntax, "empty expression", 0);
    }
    NodePtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError(ErrorCode::parse_syntax,
                       "unexpected input at offset " + std::to_string(pos_),
                       pos_);
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    skip_ws();
    throw ParseError(ErrorCode::parse_syntax,
                     what + " at offset " + std::to_string(pos_), pos_);
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('+')) {
        lhs = make_node({Kind::add, 0, Func::sqrt_fn, lhs, parse_term(), at});
      } else if (accept('-')) {
        lhs = make_node({Kind::sub, 0, Func::sqrt_fn, lhs, parse_term(), at});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        lhs = make_node({Kind::mul, 0, Func::sqrt_fn, lhs, parse_factor(), at});
      } else if (accept('/')) {
        lhs = make_node({Kind::div, 0, Func::sqrt_fn, lhs, parse_factor(), at});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    skip_ws();
    std::size_t at = pos_;
    if (accept('-')) {
      return make_node(
          {Kind::negate, 0, Func::sqrt_fn, parse_power(), nullptr, at});
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    skip_ws();
    std::size_t at = pos_;
    if (accept('^')) {
      skip_ws();
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        throw ParseError(ErrorCode::parse_nonconstant_exponent,
                         "exponent must be a number literal at offset " +
                             std::to_string(pos_),
                         pos_);
      }
      double value = parse_number_literal();
      return make_node(
          {Kind::pow, value, Func::sqrt_fn, base, nullptr, at});
    }
    return base;
  }

  double parse_number_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected digits after decimal point");
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-'))
        ++pos_;
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        pos_ = mark;  // 'e' belongs to something else; not part of the number
      } else {
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_])))
          ++pos_;
      }
    }
    double value = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc{} || res.ptr != text_.data() + pos_) {
      throw ParseError(ErrorCode::parse_syntax,
                       "malformed number at offset " + std::to_string(start),
                       start);
    }
    return value;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    std::size_t at = pos_;
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      double value = parse_number_literal();
      return make_node({Kind::number, value, Func::sqrt_fn, nullptr, nullptr, at});
    }
    if (accept('(')) {
      NodePtr inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalpha(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::string_view ident = text_.substr(start, pos_ - start);
      if (ident == "r")
        return make_node({Kind::var_r, 0, Func::sqrt_fn, nullptr, nullptr, at});
      if (ident == "s")
        return make_node({Kind::var_s, 0, Func::sqrt_fn, nullptr, nullptr, at});
      Func f;
      if (ident == "sqrt") f = Func::sqrt_fn;
      else if (ident == "exp") f = Func::exp_fn;
      else if (ident == "log") f = Func::log_fn;
      else if (ident == "sin") f = Func::sin_fn;
      else if (ident == "cos") f = Func::cos_fn;
      else {
        throw ParseError(ErrorCode::parse_unknown_identifier,
                         "unknown identifier '" + std::string(ident) +
                             "' at offset " + std::to_string(start),
                         start);
      }
      if (!accept('(')) fail("expected '(' after function name");
      NodePtr arg = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return make_node({Kind::call, 0, f, arg, nullptr, at});
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

const char* func_name(Func f) {
  switch (f) {
    case Func::sqrt_fn: return "sqrt";
    case Func::exp_fn: return "exp";
    case Func::log_fn: return "log";
    case Func::sin_fn: return "sin";
    case Func::cos_fn: return "cos";
  }
  return "?";
}

void print_node(std::ostringstream& out, const Node& n) {
  switch (n.kind) {
    case Kind::number: {
      std::ostringstream tmp;
      tmp << n.number;
      out << tmp.str();
      break;
    }
    case Kind::var_r: out << 'r'; break;
    case Kind::var_s: out << 's'; break;
    case Kind::negate:
      out << "(-";
      print_node(out, *n.lhs);
      out << ')';
      break;
    case Kind::add:
    case Kind::sub:
    case Kind::mul:
    case Kind::div: {
      char op = n.kind == Kind::add ? '+'
                : n.kind == Kind::sub ? '-'
                : n.kind == Kind::mul ? '*'
                                      : '/';
      out << '(';
      print_node(out, *n.lhs);
      out << op;
      print_node(out, *n.rhs);
      out << ')';
      break;
    }
    case Kind::pow:
      out << '(';
      print_node(out, *n.lhs);
      out << '^' << n.number << ')';
      break;
    case Kind::call:
      out << func_name(n.func) << '(';
      print_node(out, *n.lhs);
      out << ')';
      break;
  }
}

std::string node_to_string(const Node& n) {
  std::ostringstream out;
  print_node(out, n);
  return out.str();
}

[[noreturn]] void eval_domain_error(const Node& n, const std::string& what) {
  throw Error(ErrorCode::eval_domain,
              what + " in subexpression " + node_to_string(n));
}

bool is_integer(double x) {
  return std::nearbyint(x) == x && std::abs(x) <= 1e15;
}

double eval_scalar_node(const Node& n, double r, double s) {
  switch (n.kind) {
    case Kind::number: return n.number;
    case Kind::var_r: return r;
    case Kind::var_s: return s;
    case Kind::negate: return -eval_scalar_node(*n.lhs, r, s);
    case Kind::add:
      return eval_scalar_node(*n.lhs, r, s) + eval_scalar_node(*n.rhs, r, s);
    case Kind::sub:
      return eval_scalar_node(*n.lhs, r, s) - eval_scalar_node(*n.rhs, r, s);
    case Kind::mul:
      return eval_scalar_node(*n.lhs, r, s) * eval_scalar_node(*n.rhs, r, s);
    case Kind::div: {
      double denom = eval_scalar_node(*n.rhs, r, s);
      if (denom == 0.0) eval_domain_error(n, "division by zero");
      return eval_scalar_node(*n.lhs, r, s) / denom;
    }
    case Kind::pow: {
      double base = eval_scalar_node(*n.lhs, r, s);
      if (!is_integer(n.number) && base <= 0.0)
        eval_domain_error(n, "non-integer power of a non-positive base");
      if (is_integer(n.number) && n.number < 0.0 && base == 0.0)
        eval_domain_error(n, "negative power of zero");
      return std::pow(base, n.number);
    }
    case Kind::call: {
      double a = eval_scalar_node(*n.lhs, r, s);
      switch (n.func) {
        case Func::sqrt_fn:
          if (!(a > 0.0)) eval_domain_error(n, "sqrt of a non-positive value");
          return std::sqrt(a);
        case Func::exp_fn: return std::exp(a);
        case Func::log_fn:
          if (!(a > 0.0)) eval_domain_error(n, "log of a non-positive value");
          return std::log(a);
        case Func::sin_fn: return std::sin(a);
        case Func::cos_fn: return std::cos(a);
      }
      eval_domain_error(n, "unknown function");
    }
  }
  eval_domain_error(n, "malformed expression node");
}

Jet eval_jet_node(const Node& n, const Jet& r, const Jet& s) {
  switch (n.kind) {
    case Kind::number:
      return Jet::constant(n.number, r.order(), r.base_r(), r.base_s());
    case Kind::var_r: return r;
    case Kind::var_s: return s;
    case Kind::negate: return -eval_jet_node(*n.lhs, r, s);
    case Kind::add:
      return eval_jet_node(*n.lhs, r, s) + eval_jet_node(*n.rhs, r, s);
    case Kind::sub:
      return eval_jet_node(*n.lhs, r, s) - eval_jet_node(*n.rhs, r, s);
    case Kind::mul:
      return eval_jet_node(*n.lhs, r, s) * eval_jet_node(*n.rhs, r, s);
    case Kind::div: {
      Jet denom = eval_jet_node(*n.rhs, r, s);
      if (denom.value() == 0.0) eval_domain_error(n, "division by zero");
      return eval_jet_node(*n.lhs, r, s) / denom;
    }
    case Kind::pow: {
      Jet base = eval_jet_node(*n.lhs, r, s);
      if (is_integer(n.number)) {
        if (n.number < 0.0 && base.value() == 0.0)
          eval_domain_error(n, "negative power of zero");
        return powi(base, static_cast<long long>(n.number));
      }
      if (base.value() <= 0.0)
        eval_domain_error(n, "non-integer power of a non-positive base");
      return pow(base, n.number);
    }
    case Kind::call: {
      Jet a = eval_jet_node(*n.lhs, r, s);
      try {
        switch (n.func) {
          case Func::sqrt_fn: return sqrt(a);
          case Func::exp_fn: return exp(a);
          case Func::log_fn: return log(a);
          case Func::sin_fn: return sin(a);
          case Func::cos_fn: return cos(a);
        }
      } catch (const Error& err) {
        if (err.code() == ErrorCode::fn_domain)
          eval_domain_error(n, err.what());
        throw;
      }
      eval_domain_error(n, "unknown function");
    }
  }
  eval_domain_error(n, "malformed expression node");
}

}  // namespace

Expr parse(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (static_cast<unsigned char>(text[i]) > 127) {
      throw ParseError(ErrorCode::parse_syntax,
                       "non-ASCII byte at offset " + std::to_string(i), i);
    }
  }
  Parser p(text);
  return Expr(p.run(), std::string(text));
}

double eval_scalar(const Expr& e, double r, double s) {
  return eval_scalar_node(e.root(), r, s);
}

Jet eval_jet(const Expr& e, double r0, double s0, JetOrder order) {
  Jet r = Jet::variable_r(r0, order, s0);
  Jet s = Jet::variable_s(s0, order, r0);
  return eval_jet_node(e.root(), r, s);
}

std::string to_string(const Expr& e) { return node_to_string(e.root()); }

}  // namespace fw
