#pragma once

#include "finslerwarp/spray.hpp"
#include "finslerwarp/volume.hpp"

namespace fw {

// Flat-base derivative identities for alpha(v) = |v_bar| and s = v1/alpha,
// exposed so they can be unit-tested against finite differences before the
// Hessian assembly relies on them. Index 0 is the fiber direction.
std::vector<double> alpha_gradient(const PointTangent& pt);
std::vector<double> s_gradient(const PointTangent& pt);
Mat alpha_hessian(const PointTangent& pt);
Mat s_hessian(const PointTangent& pt);

// v-Hessian of the 1-homogeneous function alpha * psi(r, s) given the
// s-derivatives of psi at (r, s):
//   H_11 = psi_ss / alpha
//   H_1b = -(s v_b / alpha^2) psi_ss
//   H_ab = [(psi - s psi_s) alpha^2 d_ab - (psi - s psi_s - s^2 psi_ss)
//           v_a v_b] / alpha^3.
Mat hessian_alpha_times(const PointTangent& pt, double psi, double psi_s,
                        double psi_ss);

// Trace density T(r, s) = (sum_m dG^m/dv^m) / alpha.
//   trace_mode printed:      T = Phi_s + n*Psi
//   trace_mode definitional: T = Phi_s + n*Psi - s*Psi_s, the value obtained
//     by differentiating G^1 = Phi*alpha^2, G^a = Psi*alpha*v^a directly
//     (sum_a s_{v^a} v^a = -s, not 0).
// spray_mode selects whose Phi, Psi feed the formula; the definitional
// scalars are the default for both formulas so the two trace routes isolate
// the formula-level gap s*Psi_s.
struct TraceDensity {
  Mode mode;
  double T, T_s, T_ss;
};

TraceDensity trace_density(const MetricSpec& spec, double r, double s,
                           Mode trace_mode,
                           Mode spray_mode = Mode::definitional);

// Univariate s-jet of T at fixed r (s_order <= 4).
Jet trace_jet(const MetricSpec& spec, double r, double s, Mode trace_mode,
              Mode spray_mode = Mode::definitional, int s_order = 3);

// Definition-level divergence sum_m dG^m/dv^m at pt, each term by jet
// differentiation of the assembled spray component in its own v^m; no
// reliance on the closed trace formula.
double spray_divergence(const MetricSpec& spec, const PointTangent& pt,
                        Mode mode);

// v-Hessian of F itself (Eq. structure above with psi = phi).
Mat f_hessian(const MetricSpec& spec, const PointTangent& pt);

// E-curvature tensor. definitional: half the v-Hessian of alpha * T(r, s)
// with T from the definitional trace. printed: the literature closed form
//   E_11 = [Phi_sss + n Psi_ss] / alpha
//   E_1j = -(s v_j / alpha) [Phi_sss + n Psi_ss]
//   E_ij = (a_ij/alpha) [(Phi_s - s Phi_ss) + n (Psi - s Psi_s)]
//        + (v_i v_j / alpha^3) [n s^2 Psi_ss + s^2 Phi_sss
//                               + s (Phi_ss + n Psi_s) - (Phi_s + n Psi)]
// assembled verbatim (1/alpha^3 prefactor on the v_i v_j block).
Mat e_tensor(const MetricSpec& spec, const PointTangent& pt, Mode mode,
             Mode spray_mode = Mode::definitional);

// S = alpha * [T(r, s) + g(r) * s] with g = -d/dr log sigma.
double s_curvature(const MetricSpec& spec, const PointTangent& pt,
                   VolumeKind kind, Mode mode);

}  // namespace fw
