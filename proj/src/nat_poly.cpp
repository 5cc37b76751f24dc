#include "ultramorse/nat_poly.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "ultramorse/parse_error.hpp"

namespace ultramorse {

NatPoly::NatPoly(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto c : coeffs_) {
    if (c < 0) throw std::invalid_argument("NatPoly: negative coefficient");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

NatPoly NatPoly::monomial(int degree, std::int64_t coeff) {
  if (degree < 0) throw std::invalid_argument("NatPoly: negative degree");
  std::vector<std::int64_t> c(static_cast<std::size_t>(degree) + 1, 0);
  c.back() = coeff;
  return NatPoly(std::move(c));
}

std::int64_t NatPoly::coeff(int degree) const {
  if (degree < 0 || degree >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(degree)];
}

std::int64_t NatPoly::evaluate(std::int64_t t) const {
  std::int64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

NatPoly operator+(const NatPoly& a, const NatPoly& b) {
  std::vector<std::int64_t> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return NatPoly(std::move(c));
}

NatPoly operator*(const NatPoly& a, const NatPoly& b) {
  if (a.is_zero() || b.is_zero()) return NatPoly{};
  std::vector<std::int64_t> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return NatPoly(std::move(c));
}

std::string NatPoly::str() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t d = 0; d < coeffs_.size(); ++d) {
    const std::int64_t c = coeffs_[d];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (d == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c);
      out += "t";
      if (d > 1) out += "^" + std::to_string(d);
    }
  }
  return out.empty() ? "0" : out;
}

NatPoly NatPoly::parse(const std::string& text) {
  std::size_t pos = 0;
  const auto fail = [&](const std::string& msg) -> void {
    throw ParseError(msg, 1, static_cast<int>(pos) + 1);
  };
  const auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  const auto parse_uint = [&]() -> std::int64_t {
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected nonnegative integer");
    std::int64_t v = 0;
    const auto res = std::from_chars(text.data() + start, text.data() + pos, v);
    if (res.ec != std::errc()) fail("integer out of range");
    return v;
  };

  std::vector<std::int64_t> coeffs;
  const auto add_term = [&](int degree, std::int64_t coeff) {
    if (coeffs.size() <= static_cast<std::size_t>(degree))
      coeffs.resize(static_cast<std::size_t>(degree) + 1, 0);
    coeffs[static_cast<std::size_t>(degree)] += coeff;
  };

  skip_ws();
  if (pos == text.size()) fail("empty polynomial");
  bool expect_term = true;
  while (pos < text.size()) {
    if (!expect_term) {
      skip_ws();
      if (pos == text.size()) break;
      if (text[pos] == '+') {
        ++pos;
        expect_term = true;
        continue;
      }
      if (text[pos] == '-') fail("negative coefficients are not allowed");
      fail("expected '+' between terms");
    }
    skip_ws();
    std::int64_t coeff = 1;
    bool saw_coeff = false;
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = parse_uint();
      saw_coeff = true;
    }
    skip_ws();
    int degree = 0;
    bool saw_t = false;
    if (pos < text.size() && text[pos] == 't') {
      ++pos;
      saw_t = true;
      degree = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        degree = static_cast<int>(parse_uint());
      }
    }
    if (!saw_coeff && !saw_t) fail("expected term");
    add_term(saw_t ? degree : 0, coeff);
    expect_term = false;
  }
  if (expect_term) fail("dangling '+'");
  return NatPoly(std::move(coeffs));
}

MorseRelationReport verify_morse_relation(const NatPoly& M, const NatPoly& P) {
  MorseRelationReport report;
  report.M = M;
  report.P = P;
  report.count_M1 = M.evaluate(1);
  report.euler_ok = (M.evaluate(-1) == P.evaluate(-1));

  // D = M - P as a signed coefficient list, then synthetic division by (1+t):
  // processing from the top degree down, q_k = d_{k+1} - q_{k+1}.
  const int deg = std::max(M.degree(), P.degree());
  if (deg < 0) {  // both zero
    report.Q = NatPoly{};
    return report;
  }
  std::vector<std::int64_t> diff(static_cast<std::size_t>(deg) + 1, 0);
  for (int d = 0; d <= deg; ++d) diff[static_cast<std::size_t>(d)] = M.coeff(d) - P.coeff(d);

  std::vector<std::int64_t> quot(static_cast<std::size_t>(deg), 0);  // degree deg-1
  std::int64_t carry = 0;
  for (int d = deg; d >= 1; --d) {
    const std::int64_t q = diff[static_cast<std::size_t>(d)] - carry;
    quot[static_cast<std::size_t>(d) - 1] = q;
    carry = q;
  }
  const std::int64_t remainder = diff[0] - carry;

  if (remainder != 0) {
    report.violation = "nonzero remainder " + std::to_string(remainder) +
                       " when dividing M - P by (1 + t)";
    return report;
  }
  for (std::size_t d = 0; d < quot.size(); ++d) {
    if (quot[d] < 0) {
      report.violation = "quotient coefficient " + std::to_string(quot[d]) + " at degree " +
                         std::to_string(d) + " is negative";
      return report;
    }
  }
  while (!quot.empty() && quot.back() == 0) quot.pop_back();
  report.Q = NatPoly(std::move(quot));
  return report;
}

NatPoly default_betti(WindowKind kind, const std::optional<NatPoly>& supplied) {
  switch (kind) {
    case WindowKind::FullCoercive:
      // A coercive sublevel pair with the upper bound above every critical
      // value retracts to a point.
      return NatPoly({1});
    case WindowKind::Custom:
      if (!supplied)
        throw std::invalid_argument("custom window requires a supplied Betti polynomial");
      return *supplied;
  }
  throw std::logic_error("unreachable");
}

}  // namespace ultramorse
