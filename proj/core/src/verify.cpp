#include "finslerwarp/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "finslerwarp/parallel.hpp"
#include "finslerwarp/rng.hpp"

namespace fw {

namespace {

void check_config(const OracleConfig& cfg) {
  if (cfg.fd_step_base < 1e-7 || cfg.fd_step_base > 1e-2) {
    throw Error(ErrorCode::invalid_input,
                "fd_step_base outside [1e-7, 1e-2]");
  }
  if (cfg.richardson_levels < 1 || cfg.richardson_levels > 6) {
    throw Error(ErrorCode::invalid_input, "richardson_levels outside [1, 6]");
  }
  if (cfg.mc_samples < 10'000) {
    throw Error(ErrorCode::invalid_input, "mc_samples must be >= 1e4");
  }
}

// Step ladder for the nested difference layers; each outer layer must beat
// the noise floor of the layer below it.
struct Steps {
  double first;    // first differences of F^2
  double second;   // second differences of F^2
  double trace;    // first differences of fd_spray
  double etensor;  // second differences of fd_spray_divergence
};

Steps derive_steps(const OracleConfig& cfg) {
  Steps s{};
  s.first = cfg.fd_step_base;
  s.second = std::sqrt(cfg.fd_step_base);
  s.trace = 4.0 * s.second;
  s.etensor = 12.0 * s.second;
  return s;
}

double richardson(const std::function<double(double)>& estimate, double h,
                  int levels) {
  std::vector<double> prev;
  std::vector<double> cur;
  for (int k = 0; k < levels; ++k) {
    cur.assign(static_cast<std::size_t>(k) + 1, 0.0);
    cur[0] = estimate(h / static_cast<double>(1 << k));
    double factor = 1.0;
    for (int m = 1; m <= k; ++m) {
      factor *= 4.0;
      cur[static_cast<std::size_t>(m)] =
          (factor * cur[static_cast<std::size_t>(m - 1)] -
           prev[static_cast<std::size_t>(m - 1)]) /
          (factor - 1.0);
    }
    prev = cur;
  }
  if (!std::isfinite(prev.back())) {
    throw Error(ErrorCode::oracle_failure,
                "finite-difference extrapolation produced a non-finite value");
  }
  return prev.back();
}

struct Config2 {
  const MetricSpec* spec;
  std::vector<double> u;  // length n, u[0] = r
  std::vector<double> v;  // length n
};

Config2 base_config(const MetricSpec& spec, const PointTangent& pt) {
  Config2 c;
  c.spec = &spec;
  c.u.assign(static_cast<std::size_t>(spec.n), 0.0);
  c.u[0] = pt.r;
  for (std::size_t a = 0; a + 1 < c.u.size(); ++a)
    c.u[a + 1] = pt.base_point[a];
  c.v.assign(static_cast<std::size_t>(spec.n), 0.0);
  c.v[0] = pt.v1;
  for (std::size_t a = 0; a + 1 < c.v.size(); ++a)
    c.v[a + 1] = pt.v_bar[a];
  return c;
}

double f2_at(const Config2& c, const std::vector<double>& u,
             const std::vector<double>& v) {
  return finsler_norm_squared(*c.spec, u[0], v);
}

double coordinate_scale(double x) { return 1.0 + std::abs(x); }

// d F^2 / d u_l.
double fd_u_gradient(const Config2& c, std::size_t l, double base_step,
                     int levels) {
  auto estimate = [&](double h) {
    std::vector<double> up = c.u, dn = c.u;
    up[l] += h;
    dn[l] -= h;
    return (f2_at(c, up, c.v) - f2_at(c, dn, c.v)) / (2.0 * h);
  };
  return richardson(estimate, base_step * coordinate_scale(c.u[l]), levels);
}

// d^2 F^2 / (d u_m d v_l), cross stencil.
double fd_uv_mixed(const Config2& c, std::size_t m, std::size_t l,
                   double base_step, int levels) {
  const double su = coordinate_scale(c.u[m]);
  const double sv = coordinate_scale(c.v[l]);
  auto estimate = [&](double h) {
    const double hu = h * su, hv = h * sv;
    std::vector<double> u1 = c.u, u2 = c.u;
    u1[m] += hu;
    u2[m] -= hu;
    std::vector<double> vp = c.v, vn = c.v;
    vp[l] += hv;
    vn[l] -= hv;
    return (f2_at(c, u1, vp) - f2_at(c, u1, vn) - f2_at(c, u2, vp) +
            f2_at(c, u2, vn)) /
           (4.0 * hu * hv);
  };
  return richardson(estimate, base_step, levels);
}

// d^2 F^2 / (d v_i d v_j).
double fd_vv_second(const Config2& c, std::size_t i, std::size_t j,
                    double base_step, int levels) {
  if (i == j) {
    const double si = coordinate_scale(c.v[i]);
    const double f0 = f2_at(c, c.u, c.v);
    auto estimate = [&](double h) {
      const double hi = h * si;
      std::vector<double> vp = c.v, vn = c.v;
      vp[i] += hi;
      vn[i] -= hi;
      return (f2_at(c, c.u, vp) - 2.0 * f0 + f2_at(c, c.u, vn)) / (hi * hi);
    };
    return richardson(estimate, base_step, levels);
  }
  const double si = coordinate_scale(c.v[i]);
  const double sj = coordinate_scale(c.v[j]);
  auto estimate = [&](double h) {
    const double hi = h * si, hj = h * sj;
    std::vector<double> vpp = c.v, vpn = c.v, vnp = c.v, vnn = c.v;
    vpp[i] += hi; vpp[j] += hj;
    vpn[i] += hi; vpn[j] -= hj;
    vnp[i] -= hi; vnp[j] += hj;
    vnn[i] -= hi; vnn[j] -= hj;
    return (f2_at(c, c.u, vpp) - f2_at(c, c.u, vpn) - f2_at(c, c.u, vnp) +
            f2_at(c, c.u, vnn)) /
           (4.0 * hi * hj);
  };
  return richardson(estimate, base_step, levels);
}

Mat fd_tensor_impl(const Config2& c, const OracleConfig& cfg) {
  const Steps steps = derive_steps(cfg);
  const std::size_t n = c.v.size();
  Mat g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      g(i, j) = 0.5 * fd_vv_second(c, i, j, steps.second,
                                   cfg.richardson_levels);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

std::vector<double> fd_spray_impl(const Config2& c, const OracleConfig& cfg) {
  const Steps steps = derive_steps(cfg);
  const std::size_t n = c.v.size();
  Mat g = fd_tensor_impl(c, cfg);
  std::vector<double> rhs(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      acc += fd_uv_mixed(c, m, l, steps.second, cfg.richardson_levels) *
             c.v[m];
    }
    acc -= fd_u_gradient(c, l, steps.first, cfg.richardson_levels);
    rhs[l] = acc;
  }
  std::vector<double> G = lu_solve(g, rhs);
  for (double& x : G) x *= 0.25;
  return G;
}

double fd_divergence_impl(const Config2& c, const OracleConfig& cfg) {
  const Steps steps = derive_steps(cfg);
  const int levels = std::min(cfg.richardson_levels, 3);
  double total = 0.0;
  for (std::size_t m = 0; m < c.v.size(); ++m) {
    const double scale = coordinate_scale(c.v[m]);
    auto estimate = [&](double h) {
      const double hm = h * scale;
      Config2 up = c, dn = c;
      up.v[m] += hm;
      dn.v[m] -= hm;
      return (fd_spray_impl(up, cfg)[m] - fd_spray_impl(dn, cfg)[m]) /
             (2.0 * hm);
    };
    total += richardson(estimate, steps.trace, levels);
  }
  return total;
}

}  // namespace

Mat fd_fundamental_tensor(const MetricSpec& spec, const PointTangent& pt,
                          const OracleConfig& cfg) {
  check_config(cfg);
  return fd_tensor_impl(base_config(spec, pt), cfg);
}

std::vector<double> fd_spray(const MetricSpec& spec, const PointTangent& pt,
                             const OracleConfig& cfg) {
  check_config(cfg);
  return fd_spray_impl(base_config(spec, pt), cfg);
}

double fd_spray_divergence(const MetricSpec& spec, const PointTangent& pt,
                           const OracleConfig& cfg) {
  check_config(cfg);
  return fd_divergence_impl(base_config(spec, pt), cfg);
}

Mat fd_e_tensor(const MetricSpec& spec, const PointTangent& pt,
                const OracleConfig& cfg) {
  check_config(cfg);
  const Config2 c = base_config(spec, pt);
  const Steps steps = derive_steps(cfg);
  // The outermost layer sits on top of two noisy ones; extrapolating deep
  // here amplifies that noise faster than it removes truncation.
  const int levels = std::min(cfg.richardson_levels, 2);
  const std::size_t n = c.v.size();
  Mat e(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double si = coordinate_scale(c.v[i]);
      const double sj = coordinate_scale(c.v[j]);
      auto estimate = [&](double h) {
        if (i == j) {
          const double hi = h * si;
          Config2 up = c, dn = c;
          up.v[i] += hi;
          dn.v[i] -= hi;
          const double f0 = fd_divergence_impl(c, cfg);
          return (fd_divergence_impl(up, cfg) - 2.0 * f0 +
                  fd_divergence_impl(dn, cfg)) /
                 (hi * hi);
        }
        const double hi = h * si, hj = h * sj;
        Config2 pp = c, pn = c, np = c, nn = c;
        pp.v[i] += hi; pp.v[j] += hj;
        pn.v[i] += hi; pn.v[j] -= hj;
        np.v[i] -= hi; np.v[j] += hj;
        nn.v[i] -= hi; nn.v[j] -= hj;
        return (fd_divergence_impl(pp, cfg) - fd_divergence_impl(pn, cfg) -
                fd_divergence_impl(np, cfg) + fd_divergence_impl(nn, cfg)) /
               (4.0 * hi * hj);
      };
      e(i, j) = 0.5 * richardson(estimate, steps.etensor, levels);
      e(j, i) = e(i, j);
    }
  }
  return e;
}

double unit_ball_volume(int n) {
  return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

namespace {

// Determinant of the fundamental tensor for Monte-Carlo weighting. Samples
// in the measure-zero sliver along the fiber axis can push the closed form
// past the float range; those contribute 0 instead of poisoning the sum.
double det_or_zero(const MetricSpec& spec, double r, double s) {
  try {
    const double det = det_fundamental_forms(spec, r, s).chi_lambda_form;
    return std::isfinite(det) ? det : 0.0;
  } catch (const Error&) {
    return 0.0;
  }
}

}  // namespace

double direct_volume_density(const MetricSpec& spec, double r,
                             VolumeKind kind, const OracleConfig& cfg) {
  check_config(cfg);
  if (spec.n > 4) {
    throw Error(ErrorCode::invalid_input,
                "direct volume oracle limited to n <= 4");
  }
  const std::size_t n = static_cast<std::size_t>(spec.n);
  const CounterRng rng(cfg.rng_seed);

  // Boundary scan: along direction d the unit ball ends at d / F(d), since
  // F is 1-homogeneous. Gaussian directions come from Box-Muller over the
  // counter stream; stream 0 is reserved for the scan, samples start at 1.
  constexpr std::size_t kScanDirs = 1024;
  std::vector<double> box(n, 0.0);
  std::uint64_t ctr = 0;
  auto next_gaussian = [&]() {
    // Box-Muller; u1 is kept away from 0.
    const double u1 = rng.uniform(ctr++) + 1e-18;
    const double u2 = rng.uniform(ctr++);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  for (std::size_t d = 0; d < kScanDirs; ++d) {
    std::vector<double> dir(n);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dir[i] = next_gaussian();
      norm += dir[i] * dir[i];
    }
    norm = std::sqrt(norm);
    if (!(norm > 0.0)) continue;
    for (double& x : dir) x /= norm;
    const double f = finsler_norm(spec, r, dir);
    if (!(f > 1e-9)) {
      throw Error(ErrorCode::unbounded_ball,
                  "unit ball boundary scan found a direction with F <= 0");
    }
    if (std::isinf(f)) continue;
    for (std::size_t i = 0; i < n; ++i)
      box[i] = std::max(box[i], std::abs(dir[i] / f));
  }
  double box_volume = 1.0;
  for (double& b : box) {
    if (!(b > 0.0)) {
      throw Error(ErrorCode::unbounded_ball,
                  "unit ball boundary scan produced an empty box");
    }
    b *= 1.5;
    box_volume *= 2.0 * b;
  }

  // Counter layout: sample i draws coordinates from words
  // kScanReserve + i*n + j, identical regardless of scheduling. Blocks are
  // summed sequentially inside and folded pairwise in index order, so the
  // result does not depend on the worker count.
  constexpr std::uint64_t kScanReserve = 1 << 20;
  constexpr std::int64_t kBlock = 65536;
  const std::int64_t blocks = (cfg.mc_samples + kBlock - 1) / kBlock;
  std::vector<double> block_hits(static_cast<std::size_t>(blocks), 0.0);
  std::vector<double> block_det(static_cast<std::size_t>(blocks), 0.0);
  const bool want_det = kind == VolumeKind::holmes_thompson;

  parallel_for(static_cast<std::size_t>(blocks), [&](std::size_t b) {
    const std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
    const std::int64_t hi = std::min(cfg.mc_samples, lo + kBlock);
    double hits = 0.0;
    double det_sum = 0.0;
    std::vector<double> v(n);
    for (std::int64_t i = lo; i < hi; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t word_index =
            kScanReserve + static_cast<std::uint64_t>(i) * n + j;
        v[j] = rng.uniform(word_index, -box[j], box[j]);
      }
      const double f = finsler_norm(spec, r, v);
      if (f < 1.0) {
        hits += 1.0;
        if (want_det) {
          double alpha = 0.0;
          for (std::size_t a = 1; a < n; ++a) alpha += v[a] * v[a];
          alpha = std::sqrt(alpha);
          det_sum += det_or_zero(spec, r, v[0] / alpha);
        }
      }
    }
    block_hits[b] = hits;
    block_det[b] = det_sum;
  });

  const double total_hits = pairwise_sum(std::move(block_hits));
  const double samples = static_cast<double>(cfg.mc_samples);
  const double ball = unit_ball_volume(spec.n);
  if (kind == VolumeKind::busemann_hausdorff) {
    const double measured = box_volume * total_hits / samples;
    if (!(measured > 0.0)) {
      throw Error(ErrorCode::unbounded_ball,
                  "Monte-Carlo estimate of the unit ball volume is zero");
    }
    return ball / measured;
  }
  const double integral =
      box_volume * pairwise_sum(std::move(block_det)) / samples;
  return integral / ball;
}

double distortion(const MetricSpec& spec, const PointTangent& pt,
                  VolumeKind kind) {
  const double det = det_fundamental(spec, pt.r, pt.s);
  const double sigma = sigma_density(spec, pt.r, kind);
  return std::log(std::sqrt(det) / sigma);
}

double geodesic_s_curvature(const MetricSpec& spec, const PointTangent& pt,
                            VolumeKind kind, const OracleConfig& cfg) {
  check_config(cfg);
  const double h = 1e-3;
  const std::size_t n = static_cast<std::size_t>(spec.n);

  struct State {
    std::vector<double> x;
    std::vector<double> v;
  };

  auto spray_at = [&](const State& y) {
    double alpha = 0.0;
    for (std::size_t a = 1; a < n; ++a) alpha += y.v[a] * y.v[a];
    alpha = std::sqrt(alpha);
    if (!(alpha > 0.0)) {
      throw Error(ErrorCode::oracle_failure,
                  "geodesic left the v_bar != 0 chart");
    }
    const double s = y.v[0] / alpha;
    if (!spec.r_domain.contains(y.x[0]) || !spec.s_domain.contains(s)) {
      throw Error(ErrorCode::oracle_failure,
                  "geodesic left the declared validity domain");
    }
    PointTangent q;
    q.r = y.x[0];
    q.base_point.assign(n - 1, 0.0);
    for (std::size_t a = 1; a < n; ++a) q.base_point[a - 1] = y.x[a];
    q.v1 = y.v[0];
    q.v_bar.assign(n - 1, 0.0);
    for (std::size_t a = 1; a < n; ++a) q.v_bar[a - 1] = y.v[a];
    q.alpha_bar = alpha;
    q.s = s;
    return spray_vector(spec, q, Mode::definitional);
  };

  auto derivative = [&](const State& y) {
    State d;
    d.x = y.v;
    std::vector<double> G = spray_at(y);
    d.v.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d.v[i] = -2.0 * G[i];
    return d;
  };

  auto rk4_step = [&](State y, double dt) {
    auto axpy = [&](const State& a, const State& b, double c) {
      State out = a;
      for (std::size_t i = 0; i < n; ++i) {
        out.x[i] += c * b.x[i];
        out.v[i] += c * b.v[i];
      }
      return out;
    };
    State k1 = derivative(y);
    State k2 = derivative(axpy(y, k1, dt / 2.0));
    State k3 = derivative(axpy(y, k2, dt / 2.0));
    State k4 = derivative(axpy(y, k3, dt));
    for (std::size_t i = 0; i < n; ++i) {
      y.x[i] += dt / 6.0 * (k1.x[i] + 2.0 * k2.x[i] + 2.0 * k3.x[i] + k4.x[i]);
      y.v[i] += dt / 6.0 * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
    }
    return y;
  };

  auto tau_of = [&](const State& y) {
    double alpha = 0.0;
    for (std::size_t a = 1; a < n; ++a) alpha += y.v[a] * y.v[a];
    alpha = std::sqrt(alpha);
    const double s = y.v[0] / alpha;
    const double det = det_fundamental(spec, y.x[0], s);
    const double sigma = sigma_density(spec, y.x[0], kind);
    return std::log(std::sqrt(det) / sigma);
  };

  State y0;
  y0.x.assign(n, 0.0);
  y0.x[0] = pt.r;
  for (std::size_t a = 1; a < n; ++a) y0.x[a] = pt.base_point[a - 1];
  y0.v.assign(n, 0.0);
  y0.v[0] = pt.v1;
  for (std::size_t a = 1; a < n; ++a) y0.v[a] = pt.v_bar[a - 1];

  const double tau_plus = tau_of(rk4_step(y0, h));
  const double tau_minus = tau_of(rk4_step(y0, -h));
  return (tau_plus - tau_minus) / (2.0 * h);
}

}  // namespace fw
