#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ultramorse {

/// Polynomial with natural-number coefficients, index = degree. Trailing
/// zeros are trimmed so equal polynomials compare equal.
class NatPoly {
 public:
  NatPoly() = default;
  explicit NatPoly(std::vector<std::int64_t> coeffs);

  /// Monomial t^degree.
  static NatPoly monomial(int degree, std::int64_t coeff = 1);

  [[nodiscard]] const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] std::int64_t coeff(int degree) const;
  [[nodiscard]] std::int64_t evaluate(std::int64_t t) const;

  friend NatPoly operator+(const NatPoly& a, const NatPoly& b);
  friend NatPoly operator*(const NatPoly& a, const NatPoly& b);
  friend bool operator==(const NatPoly& a, const NatPoly& b) = default;

  /// "2 + t + 3t^2"; the zero polynomial prints "0".
  [[nodiscard]] std::string str() const;
  /// Parses the same textual form (nonnegative integer coefficients only);
  /// throws ParseError on malformed input.
  static NatPoly parse(const std::string& text);

 private:
  std::vector<std::int64_t> coeffs_;
};

/// Exact division of (M - P) by (1 + t) over the integers. Either yields the
/// quotient Q in N[t], or a violation describing why the Morse relation
/// M = P + (1+t) Q fails: nonzero remainder or a negative quotient
/// coefficient. Violations are data, not exceptions.
struct MorseRelationReport {
  NatPoly M;
  NatPoly P;
  std::optional<NatPoly> Q;            // present iff the relation holds in N[t]
  std::optional<std::string> violation;
  bool euler_ok = false;               // M(-1) == P(-1)
  std::int64_t count_M1 = 0;           // M(1): cardinality of the critical set

  [[nodiscard]] bool holds() const { return Q.has_value(); }
};

[[nodiscard]] MorseRelationReport verify_morse_relation(const NatPoly& M, const NatPoly& P);

enum class WindowKind { FullCoercive, Custom };

/// Betti polynomial input: the coercive window pins P = 1 (the sublevel pair
/// of a point); custom windows must supply their own P.
[[nodiscard]] NatPoly default_betti(WindowKind kind,
                                    const std::optional<NatPoly>& supplied = std::nullopt);

}  // namespace ultramorse
