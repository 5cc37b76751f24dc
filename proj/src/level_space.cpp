#include "ultramorse/level_space.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ultramorse {

std::shared_ptr<const LevelSpace> LevelSpace::build(const FunctionalSpec& problem, int n,
                                                    QuadSpec quad) {
  if (n < 1) throw std::invalid_argument("LevelSpace: dimension must be >= 1");
  if (quad.panels == 0) quad = QuadSpec::for_dimension(n);
  if (quad.panels < 1 || quad.points < 1)
    throw std::invalid_argument("LevelSpace: quadrature sizes must be positive");
  if (static_cast<long>(quad.panels) * quad.points < 2L * n) {
    std::ostringstream os;
    os << "LevelSpace: resolution rule panels*points >= 2n violated (" << quad.panels << "*"
       << quad.points << " < " << 2 * n << ")";
    throw std::invalid_argument(os.str());
  }

  auto space = std::shared_ptr<LevelSpace>(new LevelSpace());
  space->n_ = n;
  space->problem_ = problem;
  space->quad_spec_ = quad;
  space->quad_ = composite_gauss_legendre(problem.x0, problem.x1, quad.panels, quad.points);

  const auto num_nodes = static_cast<Eigen::Index>(space->quad_.size());
  space->basis_.resize(num_nodes, n);
  space->basis_deriv_.resize(num_nodes, n);
  space->freq_.resize(n);
  for (int k = 1; k <= n; ++k) space->freq_[k - 1] = k * std::numbers::pi / problem.length();
  for (Eigen::Index i = 0; i < num_nodes; ++i) {
    const double x = space->quad_.nodes[static_cast<std::size_t>(i)];
    for (int k = 1; k <= n; ++k) {
      space->basis_(i, k - 1) = space->basis_value(k, x);
      space->basis_deriv_(i, k - 1) = space->basis_deriv(k, x);
    }
  }

  // Gram check: quadrature of phi_j phi_k must reproduce the identity.
  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(space->quad_.weights.data(), num_nodes);
  Eigen::MatrixXd gram = space->basis_.transpose() * w.asDiagonal() * space->basis_;
  gram -= Eigen::MatrixXd::Identity(n, n);
  Eigen::Index wj = 0, wk = 0;
  const double worst = gram.cwiseAbs().maxCoeff(&wj, &wk);
  if (worst > 1e-10) {
    std::ostringstream os;
    os << "LevelSpace: Gram deviation " << worst << " at entry (" << wj + 1 << "," << wk + 1
       << ") exceeds 1e-10; increase quadrature resolution";
    throw QuadratureResolutionError(os.str());
  }
  return space;
}

double LevelSpace::basis_value(int k, double x) const {
  const double L = problem_.length();
  return std::sqrt(2.0 / L) * std::sin(k * std::numbers::pi * (x - problem_.x0) / L);
}

double LevelSpace::basis_deriv(int k, double x) const {
  const double L = problem_.length();
  const double f = k * std::numbers::pi / L;
  return std::sqrt(2.0 / L) * f * std::cos(f * (x - problem_.x0));
}

double LevelSpace::eval_u(const Eigen::VectorXd& coeffs, double x) const {
  if (x < problem_.x0 || x > problem_.x1)
    throw std::domain_error("eval_u: x outside the domain");
  double acc = 0.0;
  for (int k = 1; k <= n_; ++k) acc += coeffs[k - 1] * basis_value(k, x);
  return acc;
}

double LevelSpace::eval_du(const Eigen::VectorXd& coeffs, double x) const {
  if (x < problem_.x0 || x > problem_.x1)
    throw std::domain_error("eval_du: x outside the domain");
  double acc = 0.0;
  for (int k = 1; k <= n_; ++k) acc += coeffs[k - 1] * basis_deriv(k, x);
  return acc;
}

double LevelSpace::l2_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("l2_inner: dimension mismatch");
  return a.dot(b);
}

double LevelSpace::w_norm(const Eigen::VectorXd& coeffs) const {
  return freq_.cwiseProduct(coeffs).norm();
}

double LevelSpace::w_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return w_norm(a - b);
}

Eigen::VectorXd LevelSpace::embed(const Eigen::VectorXd& coeffs, const LevelSpace& target) {
  if (target.dimension() < coeffs.size())
    throw std::invalid_argument("embed: target level is smaller than the source vector");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(target.dimension());
  out.head(coeffs.size()) = coeffs;
  return out;
}

}  // namespace ultramorse
