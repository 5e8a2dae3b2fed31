#include "finslerwarp/spray.hpp"

#include <cmath>

#include "finslerwarp/linalg.hpp"

namespace fw {

const char* mode_name(Mode mode) {
  return mode == Mode::printed ? "printed" : "definitional";
}

namespace {

PhiPsiJets phi_psi_printed(const MetricSpec& spec, double r, double s,
                           int s_order) {
  const int K = s_order;
  Jet w = spec.w_jet(r, s, JetOrder{1, K + 2});

  Jet w_s = w.d_ds();                                   // (1, K+1)
  Jet chi = 2.0 * w.truncated({1, K + 1}) -
            Jet::variable_s(s, {1, K + 1}, r) * w_s;    // (1, K+1)
  Jet w_ss = w_s.d_ds();                                // (1, K)
  Jet lambda = 2.0 * w.truncated({1, K}) * w_ss -
               w_s.truncated({1, K}) * w_s.truncated({1, K});

  const double chi0 = chi.value();
  const double lam0 = lambda.value();
  if (!(lam0 > 0.0) || !(chi0 > 0.0)) {
    throw Error(ErrorCode::degenerate_metric,
                "degenerate metric in spray scalars (chi or Lambda <= 0)");
  }

  Jet chi_s = chi.d_ds();                               // (1, K)
  Jet sK = Jet::variable_s(s, {1, K}, r);
  Jet chiK = chi.truncated({1, K});
  Jet wsK = w_s.truncated({1, K});

  Jet U = (2.0 * chiK - 2.0 * sK * chi_s) / lambda;
  Jet V = (-2.0) * chi_s / lambda;
  Jet W = 2.0 / lambda;
  Jet X = 2.0 * wsK * chi_s / (chiK * lambda);

  JetOrder slice{0, K};
  Jet W_r = W.d_dr().truncated(slice);
  Jet chi_r = chi.d_dr().truncated(slice);
  Jet U0 = U.truncated(slice);
  Jet V0 = V.truncated(slice);
  Jet WX0 = (W + X).truncated(slice);
  Jet s0 = Jet::variable_s(s, slice, r);

  Jet Phi = 0.25 * ((W_r - chi_r) * U0 + s0 * chi_r * V0);
  Jet Psi = 0.25 * ((W_r - chi_r) * V0 + s0 * chi_r * WX0);
  return {Mode::printed, Phi, Psi};
}

PhiPsiJets phi_psi_definitional(const MetricSpec& spec, double r, double s,
                                int s_order) {
  const int K = s_order;
  Jet w = spec.w_jet(r, s, JetOrder{1, K + 2});

  // Reduced configuration u = (r, 0, ...), v = (s, 1, 0, ...): alpha = 1,
  // v_2 = 1. Everything below is a function of s alone at fixed r.
  JetOrder slice{0, K};
  Jet w_s = w.d_ds();
  Jet chi = 2.0 * w.truncated({1, K + 1}) -
            Jet::variable_s(s, {1, K + 1}, r) * w_s;

  Jet w_ss = w_s.d_ds().truncated(slice);
  Jet chi_s = chi.d_ds().truncated(slice);
  Jet chi0 = chi.truncated(slice);
  Jet chi_r = chi.d_dr().truncated(slice);
  Jet w_r = w.d_dr().truncated(slice);
  Jet w_rs = w.d_dr().d_ds().truncated(slice);
  Jet sv = Jet::variable_s(s, slice, r);
  Jet zero = Jet::constant(0.0, slice, r, s);
  Jet half = Jet::constant(0.5, slice, r, s);

  const std::size_t n = static_cast<std::size_t>(spec.n);
  std::vector<std::vector<Jet>> g(n, std::vector<Jet>(n, zero));
  g[0][0] = half * w_ss;
  g[0][1] = half * chi_s;
  g[1][0] = g[0][1];
  g[1][1] = half * chi0 - half * sv * chi_s;
  for (std::size_t a = 2; a < n; ++a) g[a][a] = half * chi0;

  // Right-hand side: [F^2]_{u^m v^l} v^m - [F^2]_{u^l} at the reduced
  // configuration, i.e. (s*w_rs - w_r, s*chi_r, 0, ...).
  std::vector<Jet> h(n, zero);
  h[0] = sv * w_rs - w_r;
  h[1] = sv * chi_r;

  std::vector<Jet> G = gauss_solve(std::move(g), std::move(h));
  Jet Phi = 0.25 * G[0];
  Jet Psi = 0.25 * G[1];
  return {Mode::definitional, Phi, Psi};
}

}  // namespace

PhiPsiJets phi_psi_jets(const MetricSpec& spec, double r, double s, Mode mode,
                        int s_order) {
  if (s_order < 0 || s_order + 2 > JetOrder::kCapS) {
    throw Error(ErrorCode::contract_violation,
                "spray scalar s_order outside supported range");
  }
  return mode == Mode::printed ? phi_psi_printed(spec, r, s, s_order)
                               : phi_psi_definitional(spec, r, s, s_order);
}

SprayScalars spray_scalars(const MetricSpec& spec, double r, double s,
                           Mode mode) {
  PhiPsiJets jets = phi_psi_jets(spec, r, s, mode, 4);
  SprayScalars out{};
  out.mode = mode;
  out.Phi = jets.Phi.derivative(0, 0);
  out.Phi_s = jets.Phi.derivative(0, 1);
  out.Phi_ss = jets.Phi.derivative(0, 2);
  out.Phi_sss = jets.Phi.derivative(0, 3);
  out.Psi = jets.Psi.derivative(0, 0);
  out.Psi_s = jets.Psi.derivative(0, 1);
  out.Psi_ss = jets.Psi.derivative(0, 2);
  return out;
}

SprayScalars spray_scalars_printed(const MetricSpec& spec, double r,
                                   double s) {
  return spray_scalars(spec, r, s, Mode::printed);
}

SprayScalars spray_scalars_definitional(const MetricSpec& spec, double r,
                                        double s) {
  return spray_scalars(spec, r, s, Mode::definitional);
}

std::vector<double> spray_vector(const MetricSpec& spec,
                                 const PointTangent& pt, Mode mode) {
  SprayScalars sc = spray_scalars(spec, pt.r, pt.s, mode);
  std::vector<double> G(static_cast<std::size_t>(spec.n), 0.0);
  const double a = pt.alpha_bar;
  G[0] = sc.Phi * a * a;
  for (std::size_t k = 1; k < G.size(); ++k)
    G[k] = sc.Psi * a * pt.v_bar[k - 1];
  return G;
}

double pairwise_sum(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::size_t n = values.size();
  while (n > 1) {
    std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < n / 2; ++i)
      values[i] = values[2 * i] + values[2 * i + 1];
    if (n % 2) values[n / 2] = values[n - 1];
    n = half;
  }
  return values[0];
}

DiscrepancyReport spray_discrepancy(const MetricSpec& spec,
                                    const std::vector<double>& r_grid,
                                    const std::vector<double>& s_grid) {
  constexpr int kQuantities = 7;
  static const char* names[kQuantities] = {"Phi",    "Phi_s", "Phi_ss",
                                           "Phi_sss", "Psi",   "Psi_s",
                                           "Psi_ss"};
  std::vector<std::vector<double>> diffs(kQuantities);
  for (double r : r_grid) {
    for (double s : s_grid) {
      SprayScalars p = spray_scalars(spec, r, s, Mode::printed);
      SprayScalars d = spray_scalars(spec, r, s, Mode::definitional);
      const double dp[kQuantities] = {
          p.Phi - d.Phi,     p.Phi_s - d.Phi_s,   p.Phi_ss - d.Phi_ss,
          p.Phi_sss - d.Phi_sss, p.Psi - d.Psi,   p.Psi_s - d.Psi_s,
          p.Psi_ss - d.Psi_ss};
      for (int q = 0; q < kQuantities; ++q)
        diffs[static_cast<std::size_t>(q)].push_back(std::abs(dp[q]));
    }
  }
  DiscrepancyReport report;
  report.points = r_grid.size() * s_grid.size();
  for (int q = 0; q < kQuantities; ++q) {
    auto& column = diffs[static_cast<std::size_t>(q)];
    double max_abs = 0.0;
    for (double v : column) max_abs = std::max(max_abs, v);
    double mean = column.empty() ? 0.0
                                 : pairwise_sum(column) /
                                       static_cast<double>(column.size());
    report.stats.push_back({names[q], max_abs, mean});
  }
  return report;
}

}  // namespace fw
