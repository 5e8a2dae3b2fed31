#include "finslerwarp/metric.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace fw {

namespace {

double norm2(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

std::string point_label(double r, double s) {
  std::ostringstream out;
  out << "(r=" << r << ", s=" << s << ")";
  return out.str();
}

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) /
                      static_cast<double>(count - 1);
  return out;
}

Jet MetricSpec::w_jet(double r, double s, JetOrder order) const {
  Jet e = eval_jet(defining_expr, r, s, order);
  if (given_as == GivenAs::w) return e;
  return e * e;
}

Jet MetricSpec::phi_jet(double r, double s, JetOrder order) const {
  Jet e = eval_jet(defining_expr, r, s, order);
  if (given_as == GivenAs::phi) return e;
  return sqrt(e);
}

double MetricSpec::w_value(double r, double s) const {
  double e = eval_scalar(defining_expr, r, s);
  return given_as == GivenAs::w ? e : e * e;
}

PointTangent make_point_tangent(const MetricSpec& spec, double r,
                                std::vector<double> base_point, double v1,
                                std::vector<double> v_bar) {
  if (base_point.size() != static_cast<std::size_t>(spec.n - 1) ||
      v_bar.size() != static_cast<std::size_t>(spec.n - 1)) {
    throw Error(ErrorCode::contract_violation,
                "point tangent dimension does not match the metric dimension");
  }
  PointTangent pt;
  pt.r = r;
  pt.base_point = std::move(base_point);
  pt.v1 = v1;
  pt.v_bar = std::move(v_bar);
  pt.alpha_bar = norm2(pt.v_bar);
  if (!(pt.alpha_bar > 0.0)) {
    throw Error(ErrorCode::invalid_input, "v_bar must be nonzero");
  }
  pt.s = v1 / pt.alpha_bar;
  if (!std::isfinite(pt.s)) {
    throw Error(ErrorCode::invalid_input, "fiber ratio s is not finite");
  }
  if (!spec.r_domain.contains(r)) {
    throw Error(ErrorCode::invalid_input,
                "r outside the declared r-domain of the metric");
  }
  if (!spec.s_domain.contains(pt.s)) {
    throw Error(ErrorCode::invalid_input,
                "s = v1/alpha outside the declared s-domain of the metric");
  }
  return pt;
}

PointTangent canonical_point(const MetricSpec& spec, double r, double s) {
  std::vector<double> base(static_cast<std::size_t>(spec.n - 1), 0.0);
  std::vector<double> v_bar(static_cast<std::size_t>(spec.n - 1), 0.0);
  v_bar[0] = 1.0;
  return make_point_tangent(spec, r, std::move(base), s, std::move(v_bar));
}

PointTangent scaled(const PointTangent& pt, double lambda) {
  PointTangent out = pt;
  out.v1 *= lambda;
  for (double& x : out.v_bar) x *= lambda;
  out.alpha_bar *= lambda;
  return out;  // s unchanged
}

MetricScalars scalar_fields(const MetricSpec& spec, double r, double s) {
  JetOrder order{2, 6};
  Jet w = spec.w_jet(r, s, order);
  Jet phi = spec.phi_jet(r, s, order);

  MetricScalars m{};
  m.w = w.derivative(0, 0);
  m.w_s = w.derivative(0, 1);
  m.w_ss = w.derivative(0, 2);
  m.w_r = w.derivative(1, 0);
  m.w_rs = w.derivative(1, 1);
  m.phi = phi.derivative(0, 0);
  m.phi_s = phi.derivative(0, 1);
  m.phi_ss = phi.derivative(0, 2);

  // chi = 2w - s*w_s at order (2,5); Lambda = 2w*w_ss - w_s^2 at (2,4).
  // Differentiation of a truncated series is exact for the retained orders.
  Jet w_s = w.d_ds();
  JetOrder ord1{order.max_r, order.max_s - 1};
  Jet chi = 2.0 * w.truncated(ord1) - Jet::variable_s(s, ord1, r) * w_s;

  Jet w_ss = w_s.d_ds();
  JetOrder ord2{order.max_r, order.max_s - 2};
  Jet w2 = w.truncated(ord2);
  Jet ws2 = w_s.truncated(ord2);
  Jet lambda = 2.0 * w2 * w_ss - ws2 * ws2;

  m.chi = chi.derivative(0, 0);
  m.chi_s = chi.derivative(0, 1);
  m.chi_r = chi.derivative(1, 0);
  m.Lambda = lambda.derivative(0, 0);

  if (!(m.Lambda > 0.0) || !(m.chi > 0.0)) {
    throw Error(ErrorCode::degenerate_metric,
                "degenerate metric at " + point_label(r, s) +
                    ": requires chi > 0 and Lambda > 0");
  }

  // U, V, W, X at order (2,3).
  JetOrder ord3{order.max_r, order.max_s - 3};
  Jet chi3 = chi.truncated(ord3);
  Jet chi_s3 = chi.d_ds().truncated(ord3);
  Jet lam3 = lambda.truncated(ord3);
  Jet s3 = Jet::variable_s(s, ord3, r);
  Jet ws3 = w_s.truncated(ord3);

  Jet U = (2.0 * chi3 - 2.0 * s3 * chi_s3) / lam3;
  Jet V = (-2.0) * chi_s3 / lam3;
  Jet W = 2.0 / lam3;
  Jet X = 2.0 * ws3 * chi_s3 / (chi3 * lam3);

  m.U = U.derivative(0, 0);
  m.V = V.derivative(0, 0);
  m.W = W.derivative(0, 0);
  m.X = X.derivative(0, 0);
  m.W_r = W.derivative(1, 0);
  return m;
}

Mat fundamental_tensor(const MetricSpec& spec, const PointTangent& pt) {
  MetricScalars m = scalar_fields(spec, pt.r, pt.s);
  const std::size_t n = static_cast<std::size_t>(spec.n);
  Mat g(n, n);
  g(0, 0) = 0.5 * m.w_ss;
  for (std::size_t a = 1; a < n; ++a) {
    double alpha_grad = pt.v_bar[a - 1] / pt.alpha_bar;
    g(0, a) = 0.5 * m.chi_s * alpha_grad;
    g(a, 0) = g(0, a);
  }
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double delta = (a == b) ? 1.0 : 0.0;
      double va = pt.v_bar[a - 1] / pt.alpha_bar;
      double vb = pt.v_bar[b - 1] / pt.alpha_bar;
      g(a, b) = 0.5 * m.chi * delta - 0.5 * pt.s * m.chi_s * va * vb;
      g(b, a) = g(a, b);
    }
  }
  if (!is_positive_definite(g)) {
    throw Error(ErrorCode::degenerate_metric,
                "fundamental tensor not positive definite at " +
                    point_label(pt.r, pt.s));
  }
  return g;
}

DetForms det_fundamental_forms(const MetricSpec& spec, double r, double s) {
  JetOrder order{0, 2};
  Jet w = spec.w_jet(r, s, order);
  Jet phi = spec.phi_jet(r, s, order);
  const double wv = w.derivative(0, 0);
  const double w_s = w.derivative(0, 1);
  const double w_ss = w.derivative(0, 2);
  const double p = phi.derivative(0, 0);
  const double p_s = phi.derivative(0, 1);
  const double p_ss = phi.derivative(0, 2);

  const double chi = 2.0 * wv - s * w_s;
  const double lambda = 2.0 * wv * w_ss - w_s * w_s;
  const int n = spec.n;

  DetForms f{};
  f.phi_form = std::pow(p, n + 1) * p_ss * std::pow(p - s * p_s, n - 2);
  f.chi_lambda_form = std::pow(chi, n - 2) * lambda / std::pow(2.0, n);
  return f;
}

double det_fundamental(const MetricSpec& spec, double r, double s) {
  DetForms f = det_fundamental_forms(spec, r, s);
  const double scale = std::max(std::abs(f.phi_form), std::abs(f.chi_lambda_form));
  if (std::abs(f.phi_form - f.chi_lambda_form) > 1e-12 * scale) {
    throw Error(ErrorCode::degenerate_metric,
                "determinant closed forms disagree at " + point_label(r, s));
  }
  if (!(f.phi_form > 0.0)) {
    throw Error(ErrorCode::degenerate_metric,
                "non-positive determinant at " + point_label(r, s));
  }
  return f.phi_form;
}

double finsler_norm_squared(const MetricSpec& spec, double r,
                            const std::vector<double>& v) {
  double f = finsler_norm(spec, r, v);
  return f * f;
}

double finsler_norm(const MetricSpec& spec, double r,
                    const std::vector<double>& v) {
  double alpha = 0.0;
  for (std::size_t a = 1; a < v.size(); ++a) alpha += v[a] * v[a];
  alpha = std::sqrt(alpha);
  if (alpha == 0.0) {
    // The fiber axis is a measure-zero limit; report +inf (outside every
    // unit ball) except for the zero vector itself.
    return v[0] == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  const double s = v[0] / alpha;
  if (spec.given_as == GivenAs::phi) {
    return alpha * eval_scalar(spec.defining_expr, r, s);
  }
  const double w = eval_scalar(spec.defining_expr, r, s);
  if (std::isinf(w) && w > 0.0) return std::numeric_limits<double>::infinity();
  if (!(w >= 0.0)) {
    throw Error(ErrorCode::eval_domain,
                "w < 0 at " + point_label(r, s) + "; F is undefined");
  }
  return alpha * std::sqrt(w);
}

ValidityReport validity_scan(const MetricSpec& spec,
                             const std::vector<double>& r_grid,
                             const std::vector<double>& s_grid) {
  ValidityReport report;
  for (double r : r_grid) {
    for (double s : s_grid) {
      ++report.points_checked;
      std::string condition;
      try {
        JetOrder order{0, 2};
        Jet w = spec.w_jet(r, s, order);
        const double wv = w.derivative(0, 0);
        const double w_s = w.derivative(0, 1);
        const double w_ss = w.derivative(0, 2);
        const double chi = 2.0 * wv - s * w_s;
        const double lambda = 2.0 * wv * w_ss - w_s * w_s;
        if (!(wv > 0.0)) condition = "w > 0";
        else if (!(w_ss > 0.0)) condition = "w_ss > 0";
        else if (!(chi > 0.0)) condition = "chi > 0";
        else if (!(lambda > 0.0)) condition = "Lambda > 0";
        else {
          PointTangent probe;
          probe.r = r;
          probe.base_point.assign(static_cast<std::size_t>(spec.n - 1), 0.0);
          probe.v_bar.assign(static_cast<std::size_t>(spec.n - 1), 0.0);
          probe.v_bar[0] = 1.0;
          probe.alpha_bar = 1.0;
          probe.v1 = s;
          probe.s = s;
          fundamental_tensor(spec, probe);
        }
      } catch (const Error& err) {
        condition = err.what();
      }
      if (!condition.empty()) {
        report.all_ok = false;
        report.failures.push_back({r, s, condition});
      }
    }
  }
  return report;
}

MetricSpec make_metric(int n, const Expr& defining_expr, GivenAs given_as,
                       Interval r_domain, Interval s_domain) {
  if (n < 2) {
    throw Error(ErrorCode::invalid_input, "metric dimension must be >= 2");
  }
  if (!(r_domain.width() >= 0.0) || !(s_domain.width() >= 0.0)) {
    throw Error(ErrorCode::invalid_input, "empty validity domain");
  }
  MetricSpec spec{n, defining_expr, given_as, r_domain, s_domain};
  ValidityReport report = validity_scan(spec, linspace(r_domain.lo, r_domain.hi, 33),
                                        linspace(s_domain.lo, s_domain.hi, 33));
  if (!report.all_ok) {
    const ValidityFailure& f = report.failures.front();
    throw Error(ErrorCode::validity_failure,
                "metric validity scan failed at " + point_label(f.r, f.s) +
                    ": " + f.condition);
  }
  return spec;
}

MetricSpec make_metric(int n, const std::string& formula, GivenAs given_as,
                       Interval r_domain, Interval s_domain) {
  return make_metric(n, parse(formula), given_as, r_domain, s_domain);
}

}  // namespace fw
