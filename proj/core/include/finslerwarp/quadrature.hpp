#pragma once

#include <array>
#include <functional>
#include <vector>

namespace fw {

// Nodes and weights of the 16-point Gauss-Legendre rule on [-1, 1],
// computed once by Newton iteration on P_16 to machine precision.
struct GaussLegendre16 {
  static constexpr int kOrder = 16;
  std::array<double, kOrder> node;
  std::array<double, kOrder> weight;

  static const GaussLegendre16& instance();
};

// Composite Gauss-Legendre integration of a vector-valued integrand over
// [a, b], doubling the panel count until every component moves by at most
// rel_tol * (1 + |component|) between refinements. Throws
// Error(quadrature_no_convergence) after max_doublings.
std::vector<double> integrate_doubling(
    const std::function<std::vector<double>(double)>& f, double a, double b,
    std::size_t components, double rel_tol, int max_doublings);

}  // namespace fw
