#pragma once

#include "finslerwarp/metric.hpp"

namespace fw {

enum class VolumeKind { busemann_hausdorff, holmes_thompson };

const char* volume_kind_name(VolumeKind kind);  // "bh" / "ht"

// Reduced 1-D volume integrals and the derived density data at one r:
//   k_BH(r) = Int_R phi(r, s)^(-n) ds
//   k_HT(r) = Int_R upsilon(r, s) ds,  upsilon = phi*phi_ss*(phi - s*phi_s)^(n-2)
//   sigma_BH = c_n / k_BH,   sigma_HT = k_HT / c_n,
//   c_n = Int_0^pi sin^(n-2) t dt,
//   g = -d/dr log sigma   (so g_BH = +k'/k, g_HT = -k'/k).
// The integrals are computed with the tan-substitution s = tan t over
// (-pi/2, pi/2) and panel-doubled Gauss-Legendre; r-derivatives ride along
// as r-jet coefficients of the integrand (differentiation under the
// integral sign).
struct VolumeFactors {
  VolumeKind kind;
  double k_value;
  double k_prime;
  double sigma;
  double g_value;          // -d/dr log sigma
  double g_printed;       // -r * k'/k, the spherically-symmetric convention
};

// c_n; n is the manifold dimension (the sine power is n-2).
double sin_power_integral(int n);

VolumeFactors volume_factors(const MetricSpec& spec, double r,
                             VolumeKind kind);

double k_factor(const MetricSpec& spec, double r, VolumeKind kind);
double sigma_density(const MetricSpec& spec, double r, VolumeKind kind);
double g_factor(const MetricSpec& spec, double r, VolumeKind kind);

}  // namespace fw
