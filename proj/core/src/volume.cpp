#include "finslerwarp/volume.hpp"

#include <cmath>

#include "finslerwarp/quadrature.hpp"

namespace fw {

const char* volume_kind_name(VolumeKind kind) {
  return kind == VolumeKind::busemann_hausdorff ? "bh" : "ht";
}

double sin_power_integral(int n) {
  // Int_0^pi sin^(n-2) t dt = sqrt(pi) * Gamma((n-1)/2) / Gamma(n/2).
  return std::sqrt(M_PI) * std::tgamma(0.5 * (n - 1)) / std::tgamma(0.5 * n);
}

namespace {

// r-jet (value and d/dr) of the reduced integrand at fiber coordinate s,
// already multiplied by the tan-substitution Jacobian 1 + s^2.
std::vector<double> integrand_r_jet(const MetricSpec& spec, double r, double t,
                                    VolumeKind kind) {
  const double sigma = std::tan(t);
  const JetOrder slice{1, 0};
  Jet phi = spec.phi_jet(r, sigma, JetOrder{1, 2});
  Jet q0 = phi.truncated(slice);            // phi as an r-jet
  Jet q1 = phi.d_ds().truncated(slice);     // phi_s
  Jet q2 = phi.d_ds().d_ds();               // phi_ss

  Jet value = (kind == VolumeKind::busemann_hausdorff)
                  ? powi(q0, -spec.n)
                  : q0 * q2 * powi(q0 - Jet::constant(sigma, slice, r, sigma) * q1,
                                   spec.n - 2);
  const double jacobian = 1.0 + sigma * sigma;
  return {value.coeff(0, 0) * jacobian, value.coeff(1, 0) * jacobian};
}

void tail_probe(const MetricSpec& spec, double r, VolumeKind kind) {
  auto magnitude = [&](double delta) {
    double m = 0.0;
    for (double sign : {-1.0, 1.0}) {
      std::vector<double> v;
      try {
        v = integrand_r_jet(spec, r, sign * (M_PI / 2.0 - delta), kind);
      } catch (const Error& err) {
        throw Error(ErrorCode::nonintegrable_tail,
                    std::string("volume integrand undefined towards |s| -> "
                                "infinity: ") +
                        err.what());
      }
      if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
        throw Error(ErrorCode::nonintegrable_tail,
                    "volume integrand not finite towards |s| -> infinity");
      }
      m = std::max(m, std::abs(v[0]));
    }
    return m;
  };
  const double near = magnitude(1e-3);
  const double nearer = magnitude(1e-6);
  if (nearer > 1e3 * (near + 1.0)) {
    throw Error(ErrorCode::nonintegrable_tail,
                "volume integrand does not decay towards |s| -> infinity");
  }
}

struct KData {
  double k;
  double k_prime;
};

KData k_data(const MetricSpec& spec, double r, VolumeKind kind) {
  tail_probe(spec, r, kind);
  auto f = [&](double t) { return integrand_r_jet(spec, r, t, kind); };
  std::vector<double> result =
      integrate_doubling(f, -M_PI / 2.0, M_PI / 2.0, 2, 1e-10, 12);
  if (!(result[0] > 0.0)) {
    throw Error(ErrorCode::nonintegrable_tail,
                "reduced volume integral is not positive");
  }
  return {result[0], result[1]};
}

}  // namespace

VolumeFactors volume_factors(const MetricSpec& spec, double r,
                             VolumeKind kind) {
  KData kd = k_data(spec, r, kind);
  const double cn = sin_power_integral(spec.n);
  VolumeFactors out{};
  out.kind = kind;
  out.k_value = kd.k;
  out.k_prime = kd.k_prime;
  if (kind == VolumeKind::busemann_hausdorff) {
    out.sigma = cn / kd.k;
    out.g_value = kd.k_prime / kd.k;   // -d/dr log(c_n / k)
  } else {
    out.sigma = kd.k / cn;
    out.g_value = -kd.k_prime / kd.k;  // -d/dr log(k / c_n)
  }
  out.g_printed = -r * kd.k_prime / kd.k;
  return out;
}

double k_factor(const MetricSpec& spec, double r, VolumeKind kind) {
  return k_data(spec, r, kind).k;
}

double sigma_density(const MetricSpec& spec, double r, VolumeKind kind) {
  return volume_factors(spec, r, kind).sigma;
}

double g_factor(const MetricSpec& spec, double r, VolumeKind kind) {
  return volume_factors(spec, r, kind).g_value;
}

}  // namespace fw
