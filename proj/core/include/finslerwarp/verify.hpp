#pragma once

#include <cstdint>

#include "finslerwarp/curvature.hpp"

namespace fw {

// Settings for the definition-level oracles. Derived step sizes: first
// differences use fd_step_base, second differences sqrt(fd_step_base), and
// the nested layers of the E oracle widen further (each differencing layer
// divides its input noise by step^2, so the steps must grow outward).
struct OracleConfig {
  double fd_step_base = 1e-4;
  int richardson_levels = 3;
  std::int64_t mc_samples = 2'000'000;
  std::uint64_t rng_seed = 0xF1A5;
};

// g_ij = 0.5 * d^2 F^2 / dv^i dv^j by Richardson-extrapolated central
// differences.
Mat fd_fundamental_tensor(const MetricSpec& spec, const PointTangent& pt,
                          const OracleConfig& cfg);

// Generic spray from finite differences of F^2 and the numerically inverted
// fd tensor; never consults the closed-form spray.
std::vector<double> fd_spray(const MetricSpec& spec, const PointTangent& pt,
                             const OracleConfig& cfg);

// sum_m dG^m/dv^m with G from fd_spray, differenced in v.
double fd_spray_divergence(const MetricSpec& spec, const PointTangent& pt,
                           const OracleConfig& cfg);

// E_ij = 0.5 * second v-differences of fd_spray_divergence.
Mat fd_e_tensor(const MetricSpec& spec, const PointTangent& pt,
                const OracleConfig& cfg);

// Monte-Carlo unit-ball volume density (n <= 4). BH: Vol(B^n)/Vol{F < 1};
// HT: integral of det g over {F < 1} divided by Vol(B^n). The bounding box
// comes from a deterministic boundary scan with a 1.5 margin; sampling is
// counter-indexed so the result is bitwise reproducible for a given seed
// and independent of worker count.
double direct_volume_density(const MetricSpec& spec, double r,
                             VolumeKind kind, const OracleConfig& cfg);

// tau = log(sqrt(det g) / sigma).
double distortion(const MetricSpec& spec, const PointTangent& pt,
                  VolumeKind kind);

// d/dt tau(gamma(t), gamma'(t)) at t = 0 along the definitional geodesic,
// by one RK4 step of size h = 1e-3 each way and a central difference.
double geodesic_s_curvature(const MetricSpec& spec, const PointTangent& pt,
                            VolumeKind kind, const OracleConfig& cfg);

// Euclidean volume of the unit n-ball.
double unit_ball_volume(int n);

}  // namespace fw
