#include "ultramorse/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ultramorse {

QuadratureRule gauss_legendre(int points) {
  if (points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  const int n = points;
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  // Roots come in +/- pairs; solve for the first half from the Chebyshev
  // initial guess, mirror the rest.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence: (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
      double p0 = 1.0, p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureRule composite_gauss_legendre(double x0, double x1, int panels, int points) {
  if (!(x0 < x1)) throw std::invalid_argument("composite_gauss_legendre: requires x0 < x1");
  if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: need at least one panel");
  const QuadratureRule base = gauss_legendre(points);
  const double h = (x1 - x0) / panels;

  QuadratureRule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * base.size());
  rule.weights.reserve(static_cast<std::size_t>(panels) * base.size());
  for (int m = 0; m < panels; ++m) {
    const double a = x0 + m * h;
    const double mid = a + 0.5 * h;
    for (std::size_t j = 0; j < base.size(); ++j) {
      rule.nodes.push_back(mid + 0.5 * h * base.nodes[j]);
      rule.weights.push_back(0.5 * h * base.weights[j]);
    }
  }
  return rule;
}

}  // namespace ultramorse
