#pragma once

#include <Eigen/Core>
#include <stdexcept>

#include "ultramorse/level_space.hpp"

namespace ultramorse {

/// Raised when F or a partial produces a non-finite value at a quadrature
/// node; carries the node location.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double node_x)
      : std::runtime_error(what + " at x = " + std::to_string(node_x)), node_x_(node_x) {}
  [[nodiscard]] double node_x() const { return node_x_; }

 private:
  double node_x_;
};

/// Quadrature assembly of the energy J(u) = sum_i w_i F(x_i, u_i, u'_i), its
/// gradient g_k = sum_i w_i [F_p phi'_k + F_u phi_k], and its Hessian
/// H_jk = sum_i w_i [F_pp phi'_j phi'_k + F_up (phi_j phi'_k + phi'_j phi_k)
///                   + F_uu phi_j phi_k].
///
/// The primary kernels partition the quadrature nodes into fixed panel-sized
/// chunks, accumulate per-chunk partials (OpenMP across chunks when enabled)
/// and reduce them in panel order, so results are bitwise reproducible for
/// any thread count. assembly::reference holds an independent straight-line
/// serial implementation kept for testing and benchmarking against.
namespace assembly {

[[nodiscard]] double energy(const LevelSpace& level, const Eigen::VectorXd& coeffs);
[[nodiscard]] Eigen::VectorXd gradient(const LevelSpace& level, const Eigen::VectorXd& coeffs);
[[nodiscard]] Eigen::MatrixXd hessian(const LevelSpace& level, const Eigen::VectorXd& coeffs);

inline double energy(const CoefficientVector& v) { return energy(*v.level, v.coeffs); }
inline Eigen::VectorXd gradient(const CoefficientVector& v) {
  return gradient(*v.level, v.coeffs);
}
inline Eigen::MatrixXd hessian(const CoefficientVector& v) { return hessian(*v.level, v.coeffs); }

namespace reference {
[[nodiscard]] double energy(const LevelSpace& level, const Eigen::VectorXd& coeffs);
[[nodiscard]] Eigen::VectorXd gradient(const LevelSpace& level, const Eigen::VectorXd& coeffs);
[[nodiscard]] Eigen::MatrixXd hessian(const LevelSpace& level, const Eigen::VectorXd& coeffs);
}  // namespace reference

}  // namespace assembly

}  // namespace ultramorse
