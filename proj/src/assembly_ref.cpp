#include <cmath>

#include "ultramorse/assembly.hpp"

// Straight-line serial assembly. Kept deliberately free of the chunking and
// rank-update machinery of the primary kernels so the two paths can check
// each other; also the baseline of the kernel benchmark.
namespace ultramorse::assembly::reference {

double energy(const LevelSpace& level, const Eigen::VectorXd& coeffs) {
  const auto& quad = level.quadrature();
  const auto& B = level.basis_values();
  const auto& Bd = level.basis_derivs();
  const int n = level.dimension();

  double total = 0.0;
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    double u = 0.0, du = 0.0;
    for (int k = 0; k < n; ++k) {
      u += coeffs[k] * B(row, k);
      du += coeffs[k] * Bd(row, k);
    }
    const double f = level.problem().F(quad.nodes[i], u, du);
    if (!std::isfinite(f)) throw EvaluationError("energy: non-finite integrand value", quad.nodes[i]);
    total += quad.weights[i] * f;
  }
  return total;
}

Eigen::VectorXd gradient(const LevelSpace& level, const Eigen::VectorXd& coeffs) {
  const auto& quad = level.quadrature();
  const auto& B = level.basis_values();
  const auto& Bd = level.basis_derivs();
  const int n = level.dimension();

  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    double u = 0.0, du = 0.0;
    for (int k = 0; k < n; ++k) {
      u += coeffs[k] * B(row, k);
      du += coeffs[k] * Bd(row, k);
    }
    const double fu = level.problem().F_u(quad.nodes[i], u, du);
    const double fp = level.problem().F_p(quad.nodes[i], u, du);
    if (!std::isfinite(fu) || !std::isfinite(fp))
      throw EvaluationError("gradient: non-finite integrand value", quad.nodes[i]);
    const double w = quad.weights[i];
    for (int k = 0; k < n; ++k) g[k] += w * (fp * Bd(row, k) + fu * B(row, k));
  }
  return g;
}

Eigen::MatrixXd hessian(const LevelSpace& level, const Eigen::VectorXd& coeffs) {
  const auto& quad = level.quadrature();
  const auto& B = level.basis_values();
  const auto& Bd = level.basis_derivs();
  const int n = level.dimension();

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < quad.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    double u = 0.0, du = 0.0;
    for (int k = 0; k < n; ++k) {
      u += coeffs[k] * B(row, k);
      du += coeffs[k] * Bd(row, k);
    }
    const double fuu = level.problem().F_uu(quad.nodes[i], u, du);
    const double fup = level.problem().F_up(quad.nodes[i], u, du);
    const double fpp = level.problem().F_pp(quad.nodes[i], u, du);
    if (!std::isfinite(fuu) || !std::isfinite(fup) || !std::isfinite(fpp))
      throw EvaluationError("hessian: non-finite integrand value", quad.nodes[i]);
    const double w = quad.weights[i];
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        h(j, k) += w * (fpp * Bd(row, j) * Bd(row, k) + fup * (B(row, j) * Bd(row, k) + Bd(row, j) * B(row, k)) +
                        fuu * B(row, j) * B(row, k));
      }
    }
  }
  return 0.5 * (h + h.transpose());
}

}  // namespace ultramorse::assembly::reference
