#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ultramorse/rational.hpp"

namespace ultramorse {

/// Thrown when two numbers with incompatible truncation settings meet in a
/// binary operation, or when an exponent falls outside the configured grid.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by inverse()/division on a zero operand.
class DivideByZeroError : public std::domain_error {
 public:
  DivideByZeroError() : std::domain_error("Levi-Civita division by zero") {}
};

enum class Classification { Infinitesimal, FiniteNonInfinitesimal, Infinite };

[[nodiscard]] std::string to_string(Classification c);

/// Truncated Levi-Civita series: a finite sum  sum_q a_q * e^q  over rational
/// exponents q <= truncation_order, with e a fixed positive infinitesimal.
/// Exponents live on the grid (1/exponent_den)*Z so that products keep a
/// finite term count. Values are immutable; every operation returns a fresh
/// number. Coefficient comparisons are exact (no epsilon): zero coefficients
/// are removed, equality is bitwise on the term list.
class LeviCivitaNumber {
 public:
  struct Term {
    Rational exponent;
    double coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  static constexpr std::int64_t kDefaultExponentDen = 12;

  LeviCivitaNumber() = default;

  /// The additive zero for a given truncation order.
  static LeviCivitaNumber zero(Rational truncation_order = Rational(10),
                               std::int64_t exponent_den = kDefaultExponentDen);
  /// Embedding of a real number (single term at exponent 0).
  static LeviCivitaNumber real(double value, Rational truncation_order = Rational(10),
                               std::int64_t exponent_den = kDefaultExponentDen);
  /// The canonical infinitesimal e.
  static LeviCivitaNumber epsilon(Rational truncation_order = Rational(10),
                                  std::int64_t exponent_den = kDefaultExponentDen);
  /// coeff * e^exponent.
  static LeviCivitaNumber monomial(double coeff, Rational exponent,
                                   Rational truncation_order = Rational(10),
                                   std::int64_t exponent_den = kDefaultExponentDen);
  /// Builds from arbitrary (exponent, coeff) pairs; terms are sorted, merged,
  /// zero coefficients dropped, exponents beyond the truncation order cut.
  static LeviCivitaNumber from_terms(std::vector<Term> terms, Rational truncation_order,
                                     std::int64_t exponent_den = kDefaultExponentDen);

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] Rational truncation_order() const { return truncation_order_; }
  [[nodiscard]] std::int64_t exponent_den() const { return exponent_den_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// Exponent of the dominant term; empty for zero.
  [[nodiscard]] std::optional<Rational> leading_exponent() const;
  [[nodiscard]] double leading_coeff() const;  // 0.0 for zero
  /// Coefficient at a given exponent (0.0 when absent).
  [[nodiscard]] double coeff_at(const Rational& exponent) const;

  friend LeviCivitaNumber operator+(const LeviCivitaNumber& x, const LeviCivitaNumber& y);
  friend LeviCivitaNumber operator-(const LeviCivitaNumber& x, const LeviCivitaNumber& y);
  friend LeviCivitaNumber operator*(const LeviCivitaNumber& x, const LeviCivitaNumber& y);
  friend LeviCivitaNumber operator/(const LeviCivitaNumber& x, const LeviCivitaNumber& y);
  LeviCivitaNumber operator-() const;

  friend bool operator==(const LeviCivitaNumber& x, const LeviCivitaNumber& y);

  friend std::strong_ordering operator<=>(const LeviCivitaNumber& x, const LeviCivitaNumber& y) {
    return compare(x, y);
  }

  /// Lexicographic field order: sign of x - y from the leading coefficient.
  static std::strong_ordering compare(const LeviCivitaNumber& x, const LeviCivitaNumber& y);

 private:
  void require_compatible(const LeviCivitaNumber& other) const;

  std::vector<Term> terms_;  // strictly increasing exponents, nonzero coeffs
  Rational truncation_order_ = Rational(10);
  std::int64_t exponent_den_ = kDefaultExponentDen;
};

/// Multiplicative inverse via leading-term factoring and a geometric-series
/// expansion. Throws DivideByZeroError on zero input.
[[nodiscard]] LeviCivitaNumber inverse(const LeviCivitaNumber& x);

/// Integer power by repeated multiplication (pow(x,0) == 1).
[[nodiscard]] LeviCivitaNumber pow(const LeviCivitaNumber& x, std::int64_t k);

/// Trichotomy by leading exponent: >0 (or zero value) infinitesimal, =0
/// finite non-infinitesimal, <0 infinite.
[[nodiscard]] Classification classify(const LeviCivitaNumber& x);

/// Standard part: the exponent-0 coefficient for finite numbers, +/-infinity
/// for infinite ones.
[[nodiscard]] double shadow(const LeviCivitaNumber& x);

/// x ~ y: the difference is infinitesimal (same monad).
[[nodiscard]] bool infinitely_close(const LeviCivitaNumber& x, const LeviCivitaNumber& y);

/// The difference is finite (same galaxy).
[[nodiscard]] bool same_galaxy(const LeviCivitaNumber& x, const LeviCivitaNumber& y);

/// A smooth real function presented through its derivative evaluators;
/// derivatives[k] evaluates the k-th derivative (derivatives[0] is f itself).
struct SmoothFunction {
  std::string name;
  std::vector<std::function<double(double)>> derivatives;
};

/// Lift of f to finite Levi-Civita arguments by Taylor expansion around the
/// shadow: f(r + h) = sum_{k<=order} f^(k)(r) h^k / k!. Defaults to the
/// highest derivative supplied. Throws std::domain_error on infinite x.
[[nodiscard]] LeviCivitaNumber extend_function(const SmoothFunction& f, const LeviCivitaNumber& x,
                                               int order = -1);

/// Plain-text form "a0*e^q0 + a1*e^q1 + ...". Coefficients use shortest
/// round-trip formatting; fractional exponents are parenthesized, e.g.
/// "2*e^(1/2)". parse_series accepts the full arithmetic grammar of the CLI
/// hyper command (+ - * / ^ and parentheses over reals and e).
[[nodiscard]] std::string format_series(const LeviCivitaNumber& x);
[[nodiscard]] LeviCivitaNumber parse_series(const std::string& text,
                                            Rational truncation_order = Rational(10),
                                            std::int64_t exponent_den = LeviCivitaNumber::kDefaultExponentDen);

}  // namespace ultramorse
