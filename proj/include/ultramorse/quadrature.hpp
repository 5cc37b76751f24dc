#pragma once

#include <vector>

namespace ultramorse {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
/// the Legendre recurrence. Exact for polynomials of degree 2*points - 1.
[[nodiscard]] QuadratureRule gauss_legendre(int points);

/// Composite rule: `panels` equal subintervals of [x0, x1], each carrying the
/// `points`-point Gauss-Legendre rule. Nodes are listed panel by panel in
/// increasing order.
[[nodiscard]] QuadratureRule composite_gauss_legendre(double x0, double x1, int panels,
                                                      int points);

}  // namespace ultramorse
