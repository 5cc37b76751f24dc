#pragma once

#include <memory>
#include <string>

namespace ultramorse {

/// Immutable arithmetic expression over the variables x, u, p with the
/// operators + - * / ^ and the functions sin, cos, exp. Supports evaluation
/// and exact symbolic differentiation (powers must have constant exponents
/// to be differentiable). Used for user-defined functional densities.
class Expr {
 public:
  enum class Var { X, U, P };

  virtual ~Expr() = default;
  [[nodiscard]] virtual double eval(double x, double u, double p) const = 0;
  [[nodiscard]] virtual std::shared_ptr<const Expr> diff(Var v) const = 0;
  [[nodiscard]] virtual std::string str() const = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parses the grammar above; throws ParseError with position info.
[[nodiscard]] ExprPtr parse_expression(const std::string& text);

[[nodiscard]] ExprPtr make_constant(double value);

}  // namespace ultramorse
