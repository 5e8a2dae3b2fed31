#pragma once

#include <vector>

#include "finslerwarp/metric.hpp"

namespace fw {

// Route selector used across spray, curvature and equivalence code.
//   printed      - compact closed-form expressions taken as printed in the
//                  warped-product literature; kept for quantifying how far
//                  they drift from first principles.
//   definitional - everything derived from the defining equations; the
//                  default route for all downstream consumers.
enum class Mode { printed, definitional };

const char* mode_name(Mode mode);

// The two spray scalars: G^1 = Phi * alpha^2, G^a = Psi * alpha * v^a.
struct SprayScalars {
  Mode mode = Mode::definitional;
  double Phi, Phi_s, Phi_ss, Phi_sss;
  double Psi, Psi_s, Psi_ss;
};

// Univariate s-jets of Phi and Psi at fixed r, for callers that need to
// keep differentiating (trace density, isotropy residuals).
struct PhiPsiJets {
  Mode mode;
  Jet Phi;
  Jet Psi;
};

// s_order <= 6. printed: Phi = ((W_r - chi_r)U + s chi_r V)/4 and
// Psi = ((W_r - chi_r)V + s chi_r (W + X))/4 evaluated by jet composition.
// definitional: the generic spray G^i = g^{il}([F^2]_{u^m v^l} v^m -
// [F^2]_{u^l})/4 reduced at u = (r, 0,...), v = (s, 1, 0,...) with all
// derivatives of F^2 taken analytically through w(r, v^1/alpha) and the
// tensor solved numerically over s-jets; Phi := G^1, Psi := G^2.
PhiPsiJets phi_psi_jets(const MetricSpec& spec, double r, double s, Mode mode,
                        int s_order = 4);

SprayScalars spray_scalars(const MetricSpec& spec, double r, double s,
                           Mode mode);
SprayScalars spray_scalars_printed(const MetricSpec& spec, double r, double s);
SprayScalars spray_scalars_definitional(const MetricSpec& spec, double r,
                                        double s);

// Assembled spray vector (G^1, G^2, ..., G^n) at pt, flat base.
std::vector<double> spray_vector(const MetricSpec& spec,
                                 const PointTangent& pt, Mode mode);

// Grid comparison of the two routes, one entry per carried scalar.
struct DiscrepancyStat {
  const char* quantity;
  double max_abs;
  double mean_abs;
};

struct DiscrepancyReport {
  std::vector<DiscrepancyStat> stats;
  std::size_t points = 0;
};

DiscrepancyReport spray_discrepancy(const MetricSpec& spec,
                                    const std::vector<double>& r_grid,
                                    const std::vector<double>& s_grid);

// Order-independent sum used wherever grid statistics are reduced.
double pairwise_sum(std::vector<double> values);

}  // namespace fw
