#include "finslerwarp/curvature.hpp"

#include <cmath>

namespace fw {

std::vector<double> alpha_gradient(const PointTangent& pt) {
  const std::size_t n = pt.v_bar.size() + 1;
  std::vector<double> grad(n, 0.0);
  for (std::size_t a = 1; a < n; ++a) grad[a] = pt.v_bar[a - 1] / pt.alpha_bar;
  return grad;
}

std::vector<double> s_gradient(const PointTangent& pt) {
  const std::size_t n = pt.v_bar.size() + 1;
  const double a2 = pt.alpha_bar * pt.alpha_bar;
  std::vector<double> grad(n, 0.0);
  grad[0] = 1.0 / pt.alpha_bar;
  for (std::size_t a = 1; a < n; ++a)
    grad[a] = -pt.s * pt.v_bar[a - 1] / a2;
  return grad;
}

Mat alpha_hessian(const PointTangent& pt) {
  const std::size_t n = pt.v_bar.size() + 1;
  const double al = pt.alpha_bar;
  Mat h(n, n);
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = 1; b < n; ++b) {
      const double delta = (a == b) ? 1.0 : 0.0;
      h(a, b) = (al * al * delta - pt.v_bar[a - 1] * pt.v_bar[b - 1]) /
                (al * al * al);
    }
  }
  return h;
}

Mat s_hessian(const PointTangent& pt) {
  const std::size_t n = pt.v_bar.size() + 1;
  const double al = pt.alpha_bar;
  const double al3 = al * al * al;
  const double al4 = al3 * al;
  Mat h(n, n);
  for (std::size_t a = 1; a < n; ++a) {
    h(0, a) = -pt.v_bar[a - 1] / al3;
    h(a, 0) = h(0, a);
  }
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = 1; b < n; ++b) {
      const double delta = (a == b) ? 1.0 : 0.0;
      h(a, b) = (3.0 * pt.s * pt.v_bar[a - 1] * pt.v_bar[b - 1] -
                 pt.s * al * al * delta) /
                al4;
    }
  }
  return h;
}

Mat hessian_alpha_times(const PointTangent& pt, double psi, double psi_s,
                        double psi_ss) {
  const std::size_t n = pt.v_bar.size() + 1;
  const double al = pt.alpha_bar;
  const double s = pt.s;
  Mat h(n, n);
  h(0, 0) = psi_ss / al;
  for (std::size_t b = 1; b < n; ++b) {
    h(0, b) = -s * pt.v_bar[b - 1] / (al * al) * psi_ss;
    h(b, 0) = h(0, b);
  }
  const double radial = psi - s * psi_s;
  const double residual = psi - s * psi_s - s * s * psi_ss;
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = 1; b < n; ++b) {
      const double delta = (a == b) ? 1.0 : 0.0;
      h(a, b) = (radial * al * al * delta -
                 residual * pt.v_bar[a - 1] * pt.v_bar[b - 1]) /
                (al * al * al);
    }
  }
  return h;
}

Jet trace_jet(const MetricSpec& spec, double r, double s, Mode trace_mode,
              Mode spray_mode, int s_order) {
  PhiPsiJets pp = phi_psi_jets(spec, r, s, spray_mode, s_order + 1);
  JetOrder target{0, s_order};
  Jet phi_s = pp.Phi.d_ds();
  Jet psi = pp.Psi.truncated(target);
  const double n = static_cast<double>(spec.n);
  if (trace_mode == Mode::printed) {
    return phi_s + n * psi;
  }
  Jet sv = Jet::variable_s(s, target, r);
  return phi_s + n * psi - sv * pp.Psi.d_ds();
}

TraceDensity trace_density(const MetricSpec& spec, double r, double s,
                           Mode trace_mode, Mode spray_mode) {
  Jet t = trace_jet(spec, r, s, trace_mode, spray_mode, 2);
  return {trace_mode, t.derivative(0, 0), t.derivative(0, 1),
          t.derivative(0, 2)};
}

namespace {

// Evaluate a univariate s-jet (coefficients around its base s) at an inner
// jet with matching constant term.
Jet compose_sjet(const Jet& outer, const Jet& inner) {
  const int K = outer.order().max_s;
  Jet ds = inner - inner.value();
  Jet acc = Jet::constant(outer.coeff(0, K), inner.order(), inner.base_r(),
                          inner.base_s());
  for (int k = K - 1; k >= 0; --k) {
    acc = acc * ds + outer.coeff(0, k);
  }
  return acc;
}

}  // namespace

double spray_divergence(const MetricSpec& spec, const PointTangent& pt,
                        Mode mode) {
  PhiPsiJets pp = phi_psi_jets(spec, pt.r, pt.s, mode, 2);
  const std::size_t n = static_cast<std::size_t>(spec.n);
  double divergence = 0.0;
  const JetOrder ord{0, 1};
  for (std::size_t m = 0; m < n; ++m) {
    const double vm = (m == 0) ? pt.v1 : pt.v_bar[m - 1];
    Jet x = Jet::variable_s(vm, ord, 0.0);
    auto component = [&](std::size_t k) {
      const double vk = (k == 0) ? pt.v1 : pt.v_bar[k - 1];
      return (k == m) ? x : Jet::constant(vk, ord, 0.0, vm);
    };
    Jet alpha_sq = Jet::constant(0.0, ord, 0.0, vm);
    for (std::size_t a = 1; a < n; ++a) {
      Jet va = component(a);
      alpha_sq += va * va;
    }
    Jet alpha = sqrt(alpha_sq);
    Jet s_of_v = component(0) / alpha;
    if (m == 0) {
      Jet g1 = compose_sjet(pp.Phi, s_of_v) * alpha_sq;
      divergence += g1.derivative(0, 1);
    } else {
      Jet gm = compose_sjet(pp.Psi, s_of_v) * alpha * component(m);
      divergence += gm.derivative(0, 1);
    }
  }
  return divergence;
}

Mat f_hessian(const MetricSpec& spec, const PointTangent& pt) {
  Jet phi = spec.phi_jet(pt.r, pt.s, JetOrder{0, 2});
  return hessian_alpha_times(pt, phi.derivative(0, 0), phi.derivative(0, 1),
                             phi.derivative(0, 2));
}

Mat e_tensor(const MetricSpec& spec, const PointTangent& pt, Mode mode,
             Mode spray_mode) {
  const std::size_t n = static_cast<std::size_t>(spec.n);
  if (mode == Mode::definitional) {
    TraceDensity t =
        trace_density(spec, pt.r, pt.s, Mode::definitional, spray_mode);
    Mat h = hessian_alpha_times(pt, t.T, t.T_s, t.T_ss);
    Mat e(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(i, j) = 0.5 * h(i, j);
    return e;
  }

  SprayScalars sc = spray_scalars(spec, pt.r, pt.s, spray_mode);
  const double nn = static_cast<double>(spec.n);
  const double al = pt.alpha_bar;
  const double s = pt.s;
  const double third = sc.Phi_sss + nn * sc.Psi_ss;
  Mat e(n, n);
  e(0, 0) = third / al;
  for (std::size_t b = 1; b < n; ++b) {
    e(0, b) = -(s / al) * pt.v_bar[b - 1] * third;
    e(b, 0) = e(0, b);
  }
  const double radial = (sc.Phi_s - s * sc.Phi_ss) + nn * (sc.Psi - s * sc.Psi_s);
  const double vv_bracket = nn * s * s * sc.Psi_ss + s * s * sc.Phi_sss +
                            s * (sc.Phi_ss + nn * sc.Psi_s) -
                            (sc.Phi_s + nn * sc.Psi);
  for (std::size_t a = 1; a < n; ++a) {
    for (std::size_t b = 1; b < n; ++b) {
      const double delta = (a == b) ? 1.0 : 0.0;
      e(a, b) = delta / al * radial +
                pt.v_bar[a - 1] * pt.v_bar[b - 1] / (al * al * al) * vv_bracket;
    }
  }
  return e;
}

double s_curvature(const MetricSpec& spec, const PointTangent& pt,
                   VolumeKind kind, Mode mode) {
  TraceDensity t = trace_density(spec, pt.r, pt.s, mode);
  const double g = volume_factors(spec, pt.r, kind).g_value;
  return pt.alpha_bar * (t.T + g * pt.s);
}

}  // namespace fw
