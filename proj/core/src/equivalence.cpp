#include "finslerwarp/equivalence.hpp"

#include <cmath>

#include "finslerwarp/parallel.hpp"

namespace fw {

namespace {

// Pointwise scalar data the residuals are made of.
struct ResidualInputs {
  double T, T_s, T_ss;
  double phi, phi_s, phi_ss;
};

ResidualInputs residual_inputs(const MetricSpec& spec, double r, double s,
                               Mode mode) {
  TraceDensity t = trace_density(spec, r, s, mode);
  Jet phi = spec.phi_jet(r, s, JetOrder{0, 2});
  return {t.T,
          t.T_s,
          t.T_ss,
          phi.derivative(0, 0),
          phi.derivative(0, 1),
          phi.derivative(0, 2)};
}

double fit_weighted_constant(const std::vector<double>& y,
                             const std::vector<double>& u) {
  double uy = 0.0, uu = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    uy += u[i] * y[i];
    uu += u[i] * u[i];
  }
  if (!(uu > 0.0)) {
    throw Error(ErrorCode::fit_degenerate,
                "isotropy fit has a vanishing regressor norm");
  }
  return uy / uu;
}

struct FitAccumulator {
  std::vector<double> y;
  std::vector<double> u;

  IsotropyFit finish(IsotropyKind kind, std::optional<VolumeKind> volume_kind,
                     int n, std::vector<double> s_grid) {
    const double scale = fit_weighted_constant(y, u);
    IsotropyFit fit;
    fit.kind = kind;
    fit.volume_kind = volume_kind;
    fit.c_fit = scale / (n + 1);
    fit.kappa_fit = scale;
    fit.s_grid = std::move(s_grid);
    double sum_sq = 0.0, max_abs = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double res = y[i] - scale * u[i];
      sum_sq += res * res;
      max_abs = std::max(max_abs, std::abs(res));
    }
    fit.rms_residual = std::sqrt(sum_sq / static_cast<double>(y.size()));
    fit.max_residual = max_abs;
    return fit;
  }
};

}  // namespace

double s_residual(const MetricSpec& spec, VolumeKind kind, double c, double r,
                  double s, Mode mode) {
  ResidualInputs in = residual_inputs(spec, r, s, mode);
  const double g = g_factor(spec, r, kind);
  return in.T + g * s - (spec.n + 1) * c * in.phi;
}

EResidual e_residual(const MetricSpec& spec, double c, double r, double s,
                     Mode mode) {
  ResidualInputs in = residual_inputs(spec, r, s, mode);
  const double np1 = spec.n + 1;
  const double D = in.T - np1 * c * in.phi;
  const double D_s = in.T_s - np1 * c * in.phi_s;
  const double D_ss = in.T_ss - np1 * c * in.phi_ss;
  return {D - s * D_s, D_ss};
}

double theorem_identity_residual(const MetricSpec& spec, double c,
                                 VolumeKind kind, double r, double s,
                                 Mode mode) {
  ResidualInputs in = residual_inputs(spec, r, s, mode);
  const double g = g_factor(spec, r, kind);
  const double np1 = spec.n + 1;
  const double A = in.T + g * s - np1 * c * in.phi;
  const double A_s = in.T_s + g - np1 * c * in.phi_s;
  const double D = in.T - np1 * c * in.phi;
  const double D_s = in.T_s - np1 * c * in.phi_s;
  const double R_b = D - s * D_s;
  return std::abs(R_b - (A - s * A_s));
}

namespace {

IsotropyFit fit_s_kind(const MetricSpec& spec, VolumeKind volume_kind,
                       double g, double r, const std::vector<double>& s_grid,
                       Mode mode) {
  FitAccumulator acc;
  for (double s : s_grid) {
    ResidualInputs in = residual_inputs(spec, r, s, mode);
    acc.y.push_back(in.T + g * s);
    acc.u.push_back((spec.n + 1) * in.phi);
  }
  IsotropyFit fit = acc.finish(IsotropyKind::S, volume_kind, spec.n, s_grid);
  // Residuals above are y - (n+1) c u-normalized; rescale happened inside.
  return fit;
}

IsotropyFit fit_e_kind(const MetricSpec& spec, double r,
                       const std::vector<double>& s_grid, Mode mode) {
  FitAccumulator acc;
  for (double s : s_grid) {
    ResidualInputs in = residual_inputs(spec, r, s, mode);
    acc.y.push_back(in.T - s * in.T_s);
    acc.u.push_back((spec.n + 1) * (in.phi - s * in.phi_s));
    acc.y.push_back(in.T_ss);
    acc.u.push_back((spec.n + 1) * in.phi_ss);
  }
  return acc.finish(IsotropyKind::E, std::nullopt, spec.n, s_grid);
}

}  // namespace

IsotropyFit fit_isotropy_constant(const MetricSpec& spec, IsotropyKind kind,
                                  VolumeKind volume_kind, double r,
                                  const std::vector<double>& s_grid,
                                  Mode mode) {
  if (s_grid.size() < 8) {
    throw Error(ErrorCode::invalid_input,
                "isotropy fit needs at least 8 grid points");
  }
  if (kind == IsotropyKind::S) {
    const double g = g_factor(spec, r, volume_kind);
    return fit_s_kind(spec, volume_kind, g, r, s_grid, mode);
  }
  return fit_e_kind(spec, r, s_grid, mode);
}

EquivalenceReport classify(const MetricSpec& spec, VolumeKind volume_kind,
                           const std::vector<double>& r_grid,
                           const std::vector<double>& s_grid, Mode mode,
                           double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::invalid_input, "classification tol must be > 0");
  }
  if (s_grid.size() < 8) {
    throw Error(ErrorCode::invalid_input,
                "classification needs at least 8 s-grid points");
  }
  EquivalenceReport report;
  report.mode = mode;
  report.volume_kind = volume_kind;
  report.tol = tol;
  report.per_r.resize(r_grid.size());

  std::vector<double> identity_max(r_grid.size(), 0.0);
  std::vector<double> converse_terms(r_grid.size(), 0.0);

  parallel_for(r_grid.size(), [&](std::size_t i) {
    const double r = r_grid[i];
    const double g = volume_factors(spec, r, volume_kind).g_value;
    PerRadiusFits row;
    row.r = r;
    row.g_value = g;
    row.s_fit = fit_s_kind(spec, volume_kind, g, r, s_grid, mode);
    row.e_fit = fit_e_kind(spec, r, s_grid, mode);
    row.s_ok = row.s_fit.max_residual <= tol * (1.0 + std::abs(row.s_fit.c_fit));
    row.e_ok = row.e_fit.max_residual <= tol * (1.0 + std::abs(row.e_fit.c_fit));

    // Structural identity residual at the fitted constant.
    double id_max = 0.0;
    for (double s : s_grid) {
      id_max = std::max(id_max, theorem_identity_residual(
                                    spec, row.e_fit.c_fit, volume_kind, r, s,
                                    mode));
    }
    identity_max[i] = id_max;

    // Linear-in-s coefficient of D = T - (n+1) c phi at the fitted c.
    double sd = 0.0, ss = 0.0;
    for (double s : s_grid) {
      ResidualInputs in = residual_inputs(spec, r, s, mode);
      const double D = in.T - (spec.n + 1) * row.e_fit.c_fit * in.phi;
      sd += s * D;
      ss += s * s;
    }
    converse_terms[i] = std::abs((ss > 0.0 ? sd / ss : 0.0) + g);

    report.per_r[i] = std::move(row);
  });

  report.verdict_S = true;
  report.verdict_E = true;
  for (const PerRadiusFits& row : report.per_r) {
    report.verdict_S = report.verdict_S && row.s_ok;
    report.verdict_E = report.verdict_E && row.e_ok;
    if (row.s_ok) {
      const bool same_constant =
          std::abs(row.e_fit.c_fit - row.s_fit.c_fit) <=
          10.0 * tol * (1.0 + std::abs(row.s_fit.c_fit));
      if (!row.e_ok || !same_constant) report.forward_implication_ok = false;
    }
  }
  for (double v : identity_max)
    report.theorem_identity_max = std::max(report.theorem_identity_max, v);
  if (report.verdict_E) {
    double gap = 0.0;
    for (double v : converse_terms) gap = std::max(gap, v);
    report.converse_gap = gap;
  }
  return report;
}

}  // namespace fw
