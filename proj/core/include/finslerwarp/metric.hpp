#pragma once

#include <optional>
#include <string>
#include <vector>

#include "finslerwarp/expr.hpp"
#include "finslerwarp/jet.hpp"
#include "finslerwarp/linalg.hpp"

namespace fw {

enum class GivenAs { w, phi };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
};

// A warped product metric F = alpha_bar * phi(r, s) on I x R^(n-1) with the
// base Riemannian metric fixed to the flat Euclidean one. The defining
// formula is either w(r, s) = phi^2 or phi itself; the other is derived by
// squaring / square-rooting the jet so the two stay consistent to machine
// precision.
struct MetricSpec {
  int n = 3;
  Expr defining_expr;
  GivenAs given_as = GivenAs::w;
  Interval r_domain;
  Interval s_domain;

  // Bivariate jets of w and phi at (r, s). phi requires w > 0 there.
  Jet w_jet(double r, double s, JetOrder order = {}) const;
  Jet phi_jet(double r, double s, JetOrder order = {}) const;

  double w_value(double r, double s) const;
};

// Bundle of the pointwise scalar invariants of the metric:
//   chi = 2w - s*w_s            Lambda = 2*w*w_ss - w_s^2
//   U = (2chi - 2s*chi_s)/Lambda    V = -2chi_s/Lambda
//   W = 2/Lambda                    X = 2*w_s*chi_s/(chi*Lambda)
// together with the w- and phi-partials they are built from.
struct MetricScalars {
  double w, w_s, w_ss, w_r, w_rs;
  double chi, chi_s, chi_r;
  double Lambda;
  double U, V, W, X, W_r;
  double phi, phi_s, phi_ss;
};

// A tangent configuration (r, base point; v1, v_bar) with the flat-base
// conventions alpha_bar = |v_bar| and s = v1 / alpha_bar.
struct PointTangent {
  double r = 0.0;
  std::vector<double> base_point;  // length n-1
  double v1 = 0.0;
  std::vector<double> v_bar;       // length n-1, nonzero
  double alpha_bar = 0.0;
  double s = 0.0;
};

// Validates v_bar != 0 and (r, s) against the spec domains.
PointTangent make_point_tangent(const MetricSpec& spec, double r,
                                std::vector<double> base_point, double v1,
                                std::vector<double> v_bar);

// The standard probe configuration v = (s*1, e_2) with alpha_bar = 1; by
// rotational symmetry of the flat base this loses no generality for any
// quantity that depends on v only through (alpha_bar, s).
PointTangent canonical_point(const MetricSpec& spec, double r, double s);

PointTangent scaled(const PointTangent& pt, double lambda);

struct ValidityFailure {
  double r, s;
  std::string condition;
};

struct ValidityReport {
  bool all_ok = true;
  std::size_t points_checked = 0;
  std::vector<ValidityFailure> failures;
};

// Per-point checks w > 0, w_ss > 0, chi > 0, Lambda > 0 plus positive
// definiteness of the assembled tensor at the probe tangent.
ValidityReport validity_scan(const MetricSpec& spec,
                             const std::vector<double>& r_grid,
                             const std::vector<double>& s_grid);

// Builds the spec and requires a clean 33x33 validity scan of the declared
// domains; throws Error(validity_failure) naming the first failing point and
// condition otherwise.
MetricSpec make_metric(int n, const Expr& defining_expr, GivenAs given_as,
                       Interval r_domain, Interval s_domain);
MetricSpec make_metric(int n, const std::string& formula, GivenAs given_as,
                       Interval r_domain, Interval s_domain);

// All scalar fields at one (r, s). Throws Error(degenerate_metric) when
// Lambda <= 0 or chi <= 0.
MetricScalars scalar_fields(const MetricSpec& spec, double r, double s);

// The n x n fundamental tensor at pt:
//   g_11 = w_ss/2, g_1b = chi_s/2 * v_b/alpha,
//   g_ab = chi/2 * delta_ab - s*chi_s/2 * v_a v_b / alpha^2.
// Throws Error(degenerate_metric) if the result is not positive definite.
Mat fundamental_tensor(const MetricSpec& spec, const PointTangent& pt);

struct DetForms {
  double phi_form;         // phi^(n+1) * phi_ss * (phi - s*phi_s)^(n-2)
  double chi_lambda_form;  // chi^(n-2) * Lambda / 2^n
};

// Both closed forms, no cross-checking. The chi-Lambda prefactor is 1/2^n:
// the Schur complement of the block tensor gives det = (chi/2)^(n-2) *
// (Lambda/4), which the phi-form equals identically.
DetForms det_fundamental_forms(const MetricSpec& spec, double r, double s);

// The closed-form determinant; asserts the two forms agree to 1e-12
// relative and that the value is positive.
double det_fundamental(const MetricSpec& spec, double r, double s);

// F(u, v) for a raw tangent vector v of length n (v[0] = v1). Extends by
// continuity to v_bar = 0. Values outside the declared validity box are
// evaluated anyway (callers probing neighborhoods rely on this); expression
// domain errors still throw.
double finsler_norm(const MetricSpec& spec, double r,
                    const std::vector<double>& v);
double finsler_norm_squared(const MetricSpec& spec, double r,
                            const std::vector<double>& v);

std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace fw
