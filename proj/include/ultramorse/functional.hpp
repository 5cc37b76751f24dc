#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ultramorse {

using DensityFn = std::function<double(double x, double u, double p)>;

/// Variational density F(x, u, p) on an interval with homogeneous Dirichlet
/// data, together with its analytic first and second partials in (u, p).
/// Evaluators must be pure; the spec is immutable once built.
struct FunctionalSpec {
  double x0 = 0.0;
  double x1 = 1.0;
  DensityFn F, F_u, F_p, F_uu, F_up, F_pp;
  std::string label;

  [[nodiscard]] double length() const { return x1 - x0; }
};

/// Per-partial outcome of the finite-difference consistency check.
struct PartialCheck {
  std::string name;
  double max_rel_dev = 0.0;
  double worst_x = 0.0, worst_u = 0.0, worst_p = 0.0;
  bool finite = true;  // false if the evaluator produced a non-finite value
};

struct ValidationReport {
  std::vector<PartialCheck> partials;
  bool pass = false;
  double tolerance = 0.0;

  [[nodiscard]] std::string summary() const;
};

/// Compares each analytic partial against central finite differences of F at
/// quasi-random (x, u, p) samples. Non-finite evaluator output is reported
/// with the offending sample and fails the check.
[[nodiscard]] ValidationReport validate_spec(const FunctionalSpec& spec, int samples = 50,
                                             double tolerance = 1e-5);

/// Test-oracle annotations for preset problems (never consulted by solvers).
struct KnownFacts {
  int critical_point_count = 0;
  std::vector<int> morse_indices;  // sorted ascending
};

struct ModelProblem {
  FunctionalSpec spec;
  double mu = 0.0;
  std::optional<KnownFacts> known_facts;
};

/// F = p^2/2 - (mu/2) u^2 + u^4/4 on (0, pi); requires mu > 0. Known facts
/// are populated for mu below the first three bifurcation thresholds.
[[nodiscard]] ModelProblem chafee_infante(double mu);

/// Builds a FunctionalSpec from an expression in x, u, p; the partials are
/// obtained symbolically. Throws ParseError on bad syntax and
/// std::invalid_argument when validation at load fails.
[[nodiscard]] FunctionalSpec functional_from_expression(const std::string& density, double x0,
                                                        double x1, const std::string& label = "");

}  // namespace ultramorse
