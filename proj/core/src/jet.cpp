#include "finslerwarp/jet.hpp"

#include <cmath>
#include <string>

namespace fw {

namespace {

void check_order(JetOrder order) {
  if (order.max_r < 0 || order.max_s < 0 || order.max_r > JetOrder::kCapR ||
      order.max_s > JetOrder::kCapS) {
    throw Error(ErrorCode::contract_violation,
                "jet order (" + std::to_string(order.max_r) + "," +
                    std::to_string(order.max_s) + ") outside caps (" +
                    std::to_string(JetOrder::kCapR) + "," +
                    std::to_string(JetOrder::kCapS) + ")");
  }
}

void check_finite_seed(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::invalid_input, "jet seed value is not finite");
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

Jet::Jet(JetOrder order, double base_r, double base_s)
    : order_(order),
      base_r_(base_r),
      base_s_(base_s),
      c_(static_cast<std::size_t>(order.max_r + 1) * (order.max_s + 1), 0.0) {}

Jet Jet::constant(double value, JetOrder order, double base_r, double base_s) {
  check_order(order);
  check_finite_seed(value);
  Jet j(order, base_r, base_s);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable_r(double r0, JetOrder order, double base_s) {
  check_order(order);
  check_finite_seed(r0);
  Jet j(order, r0, base_s);
  j.c_[0] = r0;
  if (order.max_r >= 1) j.c_[j.index(1, 0)] = 1.0;
  return j;
}

Jet Jet::variable_s(double s0, JetOrder order, double base_r) {
  check_order(order);
  check_finite_seed(s0);
  Jet j(order, base_r, s0);
  j.c_[0] = s0;
  if (order.max_s >= 1) j.c_[j.index(0, 1)] = 1.0;
  return j;
}

double Jet::derivative(int i, int j) const {
  if (i < 0 || j < 0 || i > order_.max_r || j > order_.max_s) {
    throw Error(ErrorCode::contract_violation,
                "derivative order (" + std::to_string(i) + "," +
                    std::to_string(j) + ") exceeds carried jet order");
  }
  return factorial(i) * factorial(j) * c_[index(i, j)];
}

Jet Jet::d_dr() const {
  if (order_.max_r < 1) {
    throw Error(ErrorCode::contract_violation,
                "d_dr on a jet with no carried r order");
  }
  Jet out(JetOrder{order_.max_r - 1, order_.max_s}, base_r_, base_s_);
  for (int i = 0; i <= out.order_.max_r; ++i)
    for (int j = 0; j <= out.order_.max_s; ++j)
      out.c_[out.index(i, j)] = (i + 1) * c_[index(i + 1, j)];
  return out;
}

Jet Jet::d_ds() const {
  if (order_.max_s < 1) {
    throw Error(ErrorCode::contract_violation,
                "d_ds on a jet with no carried s order");
  }
  Jet out(JetOrder{order_.max_r, order_.max_s - 1}, base_r_, base_s_);
  for (int i = 0; i <= out.order_.max_r; ++i)
    for (int j = 0; j <= out.order_.max_s; ++j)
      out.c_[out.index(i, j)] = (j + 1) * c_[index(i, j + 1)];
  return out;
}

Jet Jet::truncated(JetOrder target) const {
  if (target.max_r > order_.max_r || target.max_s > order_.max_s) {
    throw Error(ErrorCode::contract_violation,
                "truncation target exceeds carried jet order");
  }
  Jet out(target, base_r_, base_s_);
  for (int i = 0; i <= target.max_r; ++i)
    for (int j = 0; j <= target.max_s; ++j)
      out.c_[out.index(i, j)] = c_[index(i, j)];
  return out;
}

bool Jet::all_finite() const {
  for (double v : c_)
    if (!std::isfinite(v)) return false;
  return true;
}

void Jet::require_compatible(const Jet& a, const Jet& b) {
  if (!(a.order_ == b.order_) || a.base_r_ != b.base_r_ ||
      a.base_s_ != b.base_s_) {
    throw Error(ErrorCode::contract_violation,
                "jet operands disagree on order or base point");
  }
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += rhs.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_compatible(*this, rhs);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= rhs.c_[k];
  return *this;
}

Jet& Jet::operator+=(double rhs) {
  c_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  c_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& v : c_) v *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) {
    throw Error(ErrorCode::singular_division, "jet divided by scalar zero");
  }
  for (double& v : c_) v /= rhs;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet::require_compatible(a, b);
  Jet out(a.order_, a.base_r_, a.base_s_);
  const int R = a.order_.max_r, S = a.order_.max_s;
  for (int i = 0; i <= R; ++i) {
    for (int j = 0; j <= S; ++j) {
      double acc = 0.0;
      for (int p = 0; p <= i; ++p)
        for (int q = 0; q <= j; ++q)
          acc += a.c_[a.index(p, q)] * b.c_[b.index(i - p, j - q)];
      out.c_[out.index(i, j)] = acc;
    }
  }
  return out;
}

Jet operator/(const Jet& a, const Jet& b) {
  Jet::require_compatible(a, b);
  if (b.c_[0] == 0.0) {
    throw Error(ErrorCode::singular_division,
                "jet division by a series with zero constant term");
  }
  // Recursive coefficient solve of q * b = a in graded order.
  Jet q(a.order_, a.base_r_, a.base_s_);
  const int R = a.order_.max_r, S = a.order_.max_s;
  for (int i = 0; i <= R; ++i) {
    for (int j = 0; j <= S; ++j) {
      double acc = a.c_[a.index(i, j)];
      for (int p = 0; p <= i; ++p) {
        for (int qq = 0; qq <= j; ++qq) {
          if (p == 0 && qq == 0) continue;
          acc -= b.c_[b.index(p, qq)] * q.c_[q.index(i - p, j - qq)];
        }
      }
      q.c_[q.index(i, j)] = acc / b.c_[0];
    }
  }
  return q;
}

Jet operator/(double a, const Jet& b) {
  Jet num = Jet::constant(a, b.order_, b.base_r_, b.base_s_);
  return num / b;
}

Jet Jet::compose(const Jet& a, const std::vector<double>& taylor) {
  // Horner scheme in the zero-constant part of a; taylor[k] = f^(k)(a0)/k!.
  Jet frac = a;
  frac.c_[0] = 0.0;
  Jet acc = Jet::constant(taylor.back(), a.order_, a.base_r_, a.base_s_);
  for (int k = static_cast<int>(taylor.size()) - 2; k >= 0; --k) {
    acc = acc * frac;
    acc.c_[0] += taylor[static_cast<std::size_t>(k)];
  }
  return acc;
}

namespace {

int total_order(const Jet& a) { return a.order().max_r + a.order().max_s; }

[[noreturn]] void domain_error(const char* fn, double a0) {
  throw Error(ErrorCode::fn_domain, std::string(fn) +
                                        " applied to a jet with constant term " +
                                        std::to_string(a0) +
                                        " outside its domain");
}

}  // namespace

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

Jet exp(const Jet& a) {
  const int K = total_order(a);
  const double e0 = std::exp(a.value());
  std::vector<double> t(static_cast<std::size_t>(K) + 1);
  double fact = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) fact *= k;
    t[static_cast<std::size_t>(k)] = e0 / fact;
  }
  return Jet::compose(a, t);
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) domain_error("log", a0);
  const int K = total_order(a);
  std::vector<double> t(static_cast<std::size_t>(K) + 1);
  t[0] = std::log(a0);
  double inv_pow = 1.0;
  for (int k = 1; k <= K; ++k) {
    inv_pow /= a0;
    t[static_cast<std::size_t>(k)] = (k % 2 ? 1.0 : -1.0) * inv_pow / k;
  }
  return Jet::compose(a, t);
}

Jet sin(const Jet& a) {
  const int K = total_order(a);
  const double s0 = std::sin(a.value()), c0 = std::cos(a.value());
  std::vector<double> t(static_cast<std::size_t>(K) + 1);
  double fact = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) fact *= k;
    static const double cycle_sign[4] = {1.0, 1.0, -1.0, -1.0};
    const double base = (k % 2 == 0) ? s0 : c0;
    t[static_cast<std::size_t>(k)] = cycle_sign[k % 4] * base / fact;
  }
  return Jet::compose(a, t);
}

Jet cos(const Jet& a) {
  const int K = total_order(a);
  const double s0 = std::sin(a.value()), c0 = std::cos(a.value());
  std::vector<double> t(static_cast<std::size_t>(K) + 1);
  double fact = 1.0;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) fact *= k;
    static const double cycle_sign[4] = {1.0, -1.0, -1.0, 1.0};
    const double base = (k % 2 == 0) ? c0 : s0;
    t[static_cast<std::size_t>(k)] = cycle_sign[k % 4] * base / fact;
  }
  return Jet::compose(a, t);
}

Jet pow(const Jet& a, double exponent) {
  const double r = std::nearbyint(exponent);
  if (r == exponent && std::abs(exponent) <= 1e9) {
    return powi(a, static_cast<long long>(r));
  }
  const double a0 = a.value();
  if (!(a0 > 0.0)) domain_error("pow", a0);
  const int K = total_order(a);
  std::vector<double> t(static_cast<std::size_t>(K) + 1);
  // Binomial series: t[k] = C(exponent, k) * a0^(exponent - k).
  double coeff = std::pow(a0, exponent);
  t[0] = coeff;
  double binom = 1.0;
  for (int k = 1; k <= K; ++k) {
    binom *= (exponent - (k - 1)) / k;
    t[static_cast<std::size_t>(k)] = binom * std::pow(a0, exponent - k);
  }
  return Jet::compose(a, t);
}

Jet powi(const Jet& a, long long exponent) {
  if (exponent == 0) {
    return Jet::constant(1.0, a.order(), a.base_r(), a.base_s());
  }
  bool invert = exponent < 0;
  unsigned long long e =
      invert ? static_cast<unsigned long long>(-(exponent + 1)) + 1
             : static_cast<unsigned long long>(exponent);
  Jet result = Jet::constant(1.0, a.order(), a.base_r(), a.base_s());
  Jet base = a;
  while (e > 0) {
    if (e & 1ULL) result = result * base;
    e >>= 1ULL;
    if (e > 0) base = base * base;
  }
  if (invert) return 1.0 / result;
  return result;
}

}  // namespace fw
