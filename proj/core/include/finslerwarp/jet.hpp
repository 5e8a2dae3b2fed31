#pragma once

#include <vector>

#include "finslerwarp/errors.hpp"

namespace fw {

// Truncation orders of a bivariate Taylor table in (r, s). The defaults
// carry one order more than the deepest derivative the curvature formulas
// read, so self-tests can differentiate results once more.
struct JetOrder {
  int max_r = 2;
  int max_s = 6;

  static constexpr int kCapR = 4;
  static constexpr int kCapS = 8;

  bool operator==(const JetOrder&) const = default;
};

// Truncated bivariate Taylor expansion of a scalar quantity at a base point
// (r0, s0). coeff(i, j) = d^{i+j} f / dr^i ds^j / (i! j!). Arithmetic and
// elementary-function composition are exact for the carried orders, so every
// partial derivative extracted from a Jet is exact up to rounding. Jets are
// immutable values; all operations are pure.
class Jet {
 public:
  static Jet constant(double value, JetOrder order, double base_r = 0.0,
                      double base_s = 0.0);
  static Jet variable_r(double r0, JetOrder order, double base_s = 0.0);
  static Jet variable_s(double s0, JetOrder order, double base_r = 0.0);

  JetOrder order() const { return order_; }
  double base_r() const { return base_r_; }
  double base_s() const { return base_s_; }

  double coeff(int i, int j) const { return c_[index(i, j)]; }
  double value() const { return c_[0]; }

  // i! * j! * coeff(i, j); throws contract_violation out of range.
  double derivative(int i, int j) const;

  // Jet of the partial derivative; carried order drops by one in the
  // differentiated variable.
  Jet d_dr() const;
  Jet d_ds() const;

  // Copy truncated to a smaller (or equal) order.
  Jet truncated(JetOrder target) const;

  bool all_finite() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator/(double a, const Jet& b);

  friend Jet sqrt(const Jet& a);
  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet sin(const Jet& a);
  friend Jet cos(const Jet& a);
  // Real exponent; non-integer exponents require a positive constant term.
  friend Jet pow(const Jet& a, double exponent);

  // Integer power by binary exponentiation; exact at s0 = 0 and for
  // negative bases, unlike the log-composition route.
  friend Jet powi(const Jet& a, long long exponent);

 private:
  Jet(JetOrder order, double base_r, double base_s);

  int cols() const { return order_.max_s + 1; }
  int rows() const { return order_.max_r + 1; }
  int index(int i, int j) const { return i * cols() + j; }

  static void require_compatible(const Jet& a, const Jet& b);

  // Composition with a univariate analytic function given by its Taylor
  // coefficients at a's constant term.
  static Jet compose(const Jet& a, const std::vector<double>& taylor);

  JetOrder order_;
  double base_r_;
  double base_s_;
  std::vector<double> c_;
};

}  // namespace fw
