#include "finslerwarp/quadrature.hpp"

#include <cmath>

#include "finslerwarp/errors.hpp"
#include "finslerwarp/spray.hpp"

namespace fw {

namespace {

// P_n and P_n' by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

GaussLegendre16 build_rule() {
  GaussLegendre16 rule{};
  const int n = GaussLegendre16::kOrder;
  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess, then Newton.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 64; ++it) {
      legendre(n, x, p, dp);
      double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    rule.node[static_cast<std::size_t>(i)] = x;
    rule.weight[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendre16& GaussLegendre16::instance() {
  static const GaussLegendre16 rule = build_rule();
  return rule;
}

std::vector<double> integrate_doubling(
    const std::function<std::vector<double>(double)>& f, double a, double b,
    std::size_t components, double rel_tol, int max_doublings) {
  const GaussLegendre16& rule = GaussLegendre16::instance();

  auto run = [&](std::size_t panels) {
    std::vector<std::vector<double>> contributions;
    contributions.reserve(panels * GaussLegendre16::kOrder);
    const double width = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + width * static_cast<double>(p);
      const double mid = lo + 0.5 * width;
      const double half = 0.5 * width;
      for (int k = 0; k < GaussLegendre16::kOrder; ++k) {
        const double x = mid + half * rule.node[static_cast<std::size_t>(k)];
        std::vector<double> v = f(x);
        for (double& c : v) c *= half * rule.weight[static_cast<std::size_t>(k)];
        contributions.push_back(std::move(v));
      }
    }
    // Pairwise per-component reduction keeps the result independent of any
    // evaluation-order parallelism.
    std::vector<double> total(components, 0.0);
    for (std::size_t c = 0; c < components; ++c) {
      std::vector<double> column;
      column.reserve(contributions.size());
      for (const auto& v : contributions) column.push_back(v[c]);
      total[c] = pairwise_sum(std::move(column));
    }
    return total;
  };

  std::vector<double> prev = run(1);
  std::size_t panels = 1;
  for (int d = 1; d <= max_doublings; ++d) {
    panels *= 2;
    std::vector<double> next = run(panels);
    bool converged = true;
    for (std::size_t c = 0; c < components; ++c) {
      if (std::abs(next[c] - prev[c]) > rel_tol * (1.0 + std::abs(next[c]))) {
        converged = false;
        break;
      }
    }
    if (converged) return next;
    prev = std::move(next);
  }
  throw Error(ErrorCode::quadrature_no_convergence,
              "quadrature did not converge after " +
                  std::to_string(max_doublings) + " panel doublings");
}

}  // namespace fw
