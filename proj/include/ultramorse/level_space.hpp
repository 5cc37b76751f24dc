#pragma once

#include <Eigen/Core>
#include <memory>
#include <stdexcept>

#include "ultramorse/functional.hpp"
#include "ultramorse/quadrature.hpp"

namespace ultramorse {

/// Raised by build() when the quadrature cannot reproduce the Gram identity.
class QuadratureResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadSpec {
  int panels = 0;  // 0 means "use the 2n default"
  int points = 10;

  static QuadSpec for_dimension(int n) { return {2 * n, 10}; }
};

/// One finite-dimensional trial space V_n: the orthonormal Dirichlet sine
/// basis phi_k(x) = sqrt(2/L) sin(k pi (x-x0)/L), k = 1..n, with a composite
/// Gauss-Legendre rule resolving it. Spaces are nested by construction: the
/// first n basis functions of any finer space coincide with this one's.
/// Immutable after build; all evaluations are const and thread-safe.
class LevelSpace {
 public:
  /// Requires n >= 1 and panels*points >= 2n (aliasing guard for quartic
  /// nonlinearities); verifies the quadrature Gram matrix is the identity to
  /// 1e-10 elementwise and throws QuadratureResolutionError naming the worst
  /// entry otherwise.
  static std::shared_ptr<const LevelSpace> build(const FunctionalSpec& problem, int n,
                                                 QuadSpec quad = {});

  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] const FunctionalSpec& problem() const { return problem_; }
  [[nodiscard]] const QuadratureRule& quadrature() const { return quad_; }
  [[nodiscard]] QuadSpec quad_spec() const { return quad_spec_; }
  [[nodiscard]] double x0() const { return problem_.x0; }
  [[nodiscard]] double x1() const { return problem_.x1; }
  [[nodiscard]] double length() const { return problem_.length(); }

  /// Basis value tables at the quadrature nodes; (num_nodes x n).
  [[nodiscard]] const Eigen::MatrixXd& basis_values() const { return basis_; }
  [[nodiscard]] const Eigen::MatrixXd& basis_derivs() const { return basis_deriv_; }
  /// H1_0 weights per mode: k pi / L.
  [[nodiscard]] const Eigen::VectorXd& mode_frequencies() const { return freq_; }

  [[nodiscard]] double basis_value(int k, double x) const;   // k is 1-based mode index
  [[nodiscard]] double basis_deriv(int k, double x) const;

  /// Pointwise evaluation of u = sum c_k phi_k and its derivative; x must lie
  /// in the closed domain.
  [[nodiscard]] double eval_u(const Eigen::VectorXd& coeffs, double x) const;
  [[nodiscard]] double eval_du(const Eigen::VectorXd& coeffs, double x) const;

  /// L2 inner product (coefficients are orthonormal coordinates).
  [[nodiscard]] static double l2_inner(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
  /// H1_0 norm: sqrt(sum (k pi/L)^2 c_k^2) -- the W-norm of the pipeline.
  [[nodiscard]] double w_norm(const Eigen::VectorXd& coeffs) const;
  [[nodiscard]] double w_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  /// Zero-padding into a finer space (exact by nesting). Throws
  /// std::invalid_argument when the target is smaller.
  [[nodiscard]] static Eigen::VectorXd embed(const Eigen::VectorXd& coeffs,
                                             const LevelSpace& target);

 private:
  LevelSpace() = default;

  int n_ = 0;
  FunctionalSpec problem_;
  QuadSpec quad_spec_;
  QuadratureRule quad_;
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd basis_deriv_;
  Eigen::VectorXd freq_;
};

/// Coefficient vector bound to its level.
struct CoefficientVector {
  Eigen::VectorXd coeffs;
  std::shared_ptr<const LevelSpace> level;
};

}  // namespace ultramorse
