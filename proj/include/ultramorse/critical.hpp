#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ultramorse/level_space.hpp"

namespace ultramorse {

enum class Execution { Serial, Parallel };

class WindowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SolverConfig {
  double tol_grad = 1e-10;
  int max_newton_iter = 100;
  int n_starts = 50;
  std::uint64_t seed = 1;
  double deflation_power = 2.0;
  double deflation_shift = 1.0;
  double distinct_tol = 1e-6;   // W-norm separation of distinct points
  double eig_tol = 1e-8;        // degeneracy threshold on |eigenvalue|

  /// Throws std::invalid_argument on nonpositive tolerances or n_starts < 1.
  void validate() const;
};

/// A converged critical point with its Hessian spectrum bookkeeping.
/// Invariants (checked by the tests, not assumed): grad_norm < tol_grad,
/// morse_index = #{eig < -eig_tol}, nondegenerate iff min |eig| > eig_tol.
struct CriticalPoint {
  CoefficientVector v;
  double value = 0.0;
  double grad_norm = 0.0;
  std::vector<double> spectrum;  // ascending
  int morse_index = 0;
  bool nondegenerate = false;
  double min_abs_eig = 0.0;
  int newton_iterations = 0;
};

struct MorseData {
  std::vector<double> spectrum;
  int morse_index = 0;
  bool nondegenerate = false;
  double min_abs_eig = 0.0;
};

/// Full symmetric eigendecomposition of the Hessian at `coeffs`. Meaningful
/// for (near-)critical points; throws std::runtime_error if the eigensolver
/// does not converge.
[[nodiscard]] MorseData morse_data(const LevelSpace& level, const Eigen::VectorXd& coeffs,
                                   double eig_tol = 1e-8);

/// Newton iteration on the deflated residual M(v) g(v), where
/// M(v) = prod_i (||v - v_i||_W^-power + shift) over the deflated points.
/// Returns the converged critical point, or nullopt on divergence, iteration
/// exhaustion, repeated singular systems, or reconvergence to a deflated
/// point. Singular Newton systems get a Tikhonov-regularized retry (1e-8 I),
/// up to 3 times per solve.
[[nodiscard]] std::optional<CriticalPoint> newton_solve(
    std::shared_ptr<const LevelSpace> level, const Eigen::VectorXd& start, const SolverConfig& cfg,
    const std::vector<CriticalPoint>& deflated = {});

/// Multistart deflated Newton enumeration: the zero start plus n_starts
/// Gaussian draws with 1/k mode decay, processed in fixed-size batches.
/// Within a batch every start solves against the same frozen deflation set
/// (independent work items, parallel under OpenMP); successes merge in start
/// order afterwards, first-found point winning among duplicates. The result
/// is bitwise deterministic for a given (level, cfg, seed) no matter the
/// execution mode or thread count. Returned sorted by value.
[[nodiscard]] std::vector<CriticalPoint> deflated_search(
    std::shared_ptr<const LevelSpace> level, const SolverConfig& cfg,
    Execution exec = Execution::Parallel);

/// Points with a < value <= b, order preserved. Throws WindowError on a >= b.
[[nodiscard]] std::vector<CriticalPoint> filter_window(const std::vector<CriticalPoint>& points,
                                                       double a, double b);

}  // namespace ultramorse
