#include "ultramorse/levi_civita.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include "ultramorse/parse_error.hpp"

namespace ultramorse {

namespace {

using Term = LeviCivitaNumber::Term;
using TermMap = std::map<Rational, double>;

void check_exponent_grid(const Rational& q, std::int64_t exponent_den) {
  if (exponent_den % q.den() != 0)
    throw ConfigError("exponent " + q.str() + " not on the 1/" + std::to_string(exponent_den) +
                      " grid");
}

std::vector<Term> map_to_terms(const TermMap& map, const Rational& cut) {
  std::vector<Term> out;
  out.reserve(map.size());
  for (const auto& [q, a] : map) {
    if (a != 0.0 && q <= cut) out.push_back({q, a});
  }
  return out;
}

// Raw Cauchy product of sorted term lists, keeping exponents <= cut.
std::vector<Term> mul_terms(const std::vector<Term>& x, const std::vector<Term>& y,
                            const Rational& cut) {
  TermMap acc;
  for (const auto& tx : x) {
    for (const auto& ty : y) {
      const Rational q = tx.exponent + ty.exponent;
      if (q > cut) continue;
      acc[q] += tx.coeff * ty.coeff;
    }
  }
  return map_to_terms(acc, cut);
}

std::vector<Term> add_terms(const std::vector<Term>& x, const std::vector<Term>& y,
                            const Rational& cut) {
  TermMap acc;
  for (const auto& t : x) acc[t.exponent] += t.coeff;
  for (const auto& t : y) acc[t.exponent] += t.coeff;
  return map_to_terms(acc, cut);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Infinitesimal: return "Infinitesimal";
    case Classification::FiniteNonInfinitesimal: return "FiniteNonInfinitesimal";
    case Classification::Infinite: return "Infinite";
  }
  return "?";
}

LeviCivitaNumber LeviCivitaNumber::zero(Rational truncation_order, std::int64_t exponent_den) {
  LeviCivitaNumber x;
  x.truncation_order_ = truncation_order;
  x.exponent_den_ = exponent_den;
  return x;
}

LeviCivitaNumber LeviCivitaNumber::real(double value, Rational truncation_order,
                                        std::int64_t exponent_den) {
  return monomial(value, Rational(0), truncation_order, exponent_den);
}

LeviCivitaNumber LeviCivitaNumber::epsilon(Rational truncation_order, std::int64_t exponent_den) {
  return monomial(1.0, Rational(1), truncation_order, exponent_den);
}

LeviCivitaNumber LeviCivitaNumber::monomial(double coeff, Rational exponent,
                                            Rational truncation_order,
                                            std::int64_t exponent_den) {
  return from_terms({{exponent, coeff}}, truncation_order, exponent_den);
}

LeviCivitaNumber LeviCivitaNumber::from_terms(std::vector<Term> terms, Rational truncation_order,
                                              std::int64_t exponent_den) {
  if (exponent_den <= 0) throw ConfigError("exponent denominator must be positive");
  TermMap acc;
  for (const auto& t : terms) {
    check_exponent_grid(t.exponent, exponent_den);
    acc[t.exponent] += t.coeff;
  }
  LeviCivitaNumber x = zero(truncation_order, exponent_den);
  x.terms_ = map_to_terms(acc, truncation_order);
  return x;
}

std::optional<Rational> LeviCivitaNumber::leading_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().exponent;
}

double LeviCivitaNumber::leading_coeff() const {
  return terms_.empty() ? 0.0 : terms_.front().coeff;
}

double LeviCivitaNumber::coeff_at(const Rational& exponent) const {
  for (const auto& t : terms_) {
    if (t.exponent == exponent) return t.coeff;
    if (t.exponent > exponent) break;
  }
  return 0.0;
}

void LeviCivitaNumber::require_compatible(const LeviCivitaNumber& other) const {
  if (truncation_order_ != other.truncation_order_)
    throw ConfigError("mismatched truncation orders: " + truncation_order_.str() + " vs " +
                      other.truncation_order_.str());
  if (exponent_den_ != other.exponent_den_)
    throw ConfigError("mismatched exponent grids: 1/" + std::to_string(exponent_den_) + " vs 1/" +
                      std::to_string(other.exponent_den_));
}

LeviCivitaNumber operator+(const LeviCivitaNumber& x, const LeviCivitaNumber& y) {
  x.require_compatible(y);
  LeviCivitaNumber r = LeviCivitaNumber::zero(x.truncation_order_, x.exponent_den_);
  r.terms_ = add_terms(x.terms_, y.terms_, x.truncation_order_);
  return r;
}

LeviCivitaNumber operator-(const LeviCivitaNumber& x, const LeviCivitaNumber& y) {
  return x + (-y);
}

LeviCivitaNumber operator*(const LeviCivitaNumber& x, const LeviCivitaNumber& y) {
  x.require_compatible(y);
  LeviCivitaNumber r = LeviCivitaNumber::zero(x.truncation_order_, x.exponent_den_);
  r.terms_ = mul_terms(x.terms_, y.terms_, x.truncation_order_);
  return r;
}

LeviCivitaNumber operator/(const LeviCivitaNumber& x, const LeviCivitaNumber& y) {
  return x * inverse(y);
}

LeviCivitaNumber LeviCivitaNumber::operator-() const {
  LeviCivitaNumber r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

bool operator==(const LeviCivitaNumber& x, const LeviCivitaNumber& y) {
  x.require_compatible(y);
  return x.terms_ == y.terms_;
}

std::strong_ordering LeviCivitaNumber::compare(const LeviCivitaNumber& x,
                                               const LeviCivitaNumber& y) {
  const LeviCivitaNumber d = x - y;
  const double lead = d.leading_coeff();
  if (lead > 0) return std::strong_ordering::greater;
  if (lead < 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

LeviCivitaNumber inverse(const LeviCivitaNumber& x) {
  if (x.is_zero()) throw DivideByZeroError();
  const Rational q0 = *x.leading_exponent();
  const double a0 = x.leading_coeff();
  const Rational cut = x.truncation_order();

  // x = a0 e^q0 (1 + r) with lead(r) > 0, so 1/x = e^{-q0}/a0 * sum (-r)^j.
  // The sum is expanded on a shifted grid (exponents <= cut + q0) so that the
  // final shift by -q0 lands exactly on the stored range.
  const Rational core_cut = cut + q0;
  std::vector<LeviCivitaNumber::Term> neg_r;
  for (std::size_t i = 1; i < x.terms().size(); ++i) {
    const auto& t = x.terms()[i];
    const Rational rel = t.exponent - q0;
    if (rel > core_cut) continue;
    neg_r.push_back({rel, -t.coeff / a0});
  }

  TermMap acc;
  acc[Rational(0)] = 1.0;
  if (!neg_r.empty() && core_cut >= Rational(0)) {
    std::vector<LeviCivitaNumber::Term> power = neg_r;
    while (!power.empty()) {
      for (const auto& t : power) acc[t.exponent] += t.coeff;
      power = mul_terms(power, neg_r, core_cut);
    }
  }

  std::vector<LeviCivitaNumber::Term> out;
  for (const auto& [q, a] : acc) {
    if (a == 0.0) continue;
    const Rational shifted = q - q0;
    if (shifted > cut) continue;
    out.push_back({shifted, a / a0});
  }
  return LeviCivitaNumber::from_terms(std::move(out), cut, x.exponent_den());
}

LeviCivitaNumber pow(const LeviCivitaNumber& x, std::int64_t k) {
  if (k < 0) return inverse(pow(x, -k));
  LeviCivitaNumber acc = LeviCivitaNumber::real(1.0, x.truncation_order(), x.exponent_den());
  for (std::int64_t i = 0; i < k; ++i) acc = acc * x;
  return acc;
}

Classification classify(const LeviCivitaNumber& x) {
  const auto lead = x.leading_exponent();
  if (!lead) return Classification::Infinitesimal;  // zero
  const int s = lead->sign();
  if (s > 0) return Classification::Infinitesimal;
  if (s == 0) return Classification::FiniteNonInfinitesimal;
  return Classification::Infinite;
}

double shadow(const LeviCivitaNumber& x) {
  if (classify(x) == Classification::Infinite) {
    return x.leading_coeff() > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
  }
  return x.coeff_at(Rational(0));
}

bool infinitely_close(const LeviCivitaNumber& x, const LeviCivitaNumber& y) {
  return classify(x - y) == Classification::Infinitesimal;
}

bool same_galaxy(const LeviCivitaNumber& x, const LeviCivitaNumber& y) {
  return classify(x - y) != Classification::Infinite;
}

LeviCivitaNumber extend_function(const SmoothFunction& f, const LeviCivitaNumber& x, int order) {
  if (f.derivatives.empty())
    throw std::invalid_argument("extend_function: no derivative evaluators supplied");
  const int max_order = static_cast<int>(f.derivatives.size()) - 1;
  if (order < 0) order = max_order;
  if (order > max_order)
    throw std::invalid_argument("extend_function: order exceeds supplied derivatives");
  if (classify(x) == Classification::Infinite)
    throw std::domain_error("extend_function: Taylor lift undefined at infinite argument");

  const double r = shadow(x);
  const LeviCivitaNumber h = x - LeviCivitaNumber::real(r, x.truncation_order(), x.exponent_den());

  LeviCivitaNumber result = LeviCivitaNumber::zero(x.truncation_order(), x.exponent_den());
  LeviCivitaNumber h_pow = LeviCivitaNumber::real(1.0, x.truncation_order(), x.exponent_den());
  double factorial = 1.0;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      factorial *= k;
      h_pow = h_pow * h;
      if (h_pow.is_zero()) break;  // all higher terms are beyond the cut
    }
    const double fk = f.derivatives[static_cast<std::size_t>(k)](r);
    result = result + LeviCivitaNumber::real(fk / factorial, x.truncation_order(),
                                             x.exponent_den()) *
                          h_pow;
  }
  return result;
}

std::string format_series(const LeviCivitaNumber& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : x.terms()) {
    const bool neg = t.coeff < 0;
    const double mag = neg ? -t.coeff : t.coeff;
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = (mag == 1.0);
    const Rational& q = t.exponent;
    if (q == Rational(0)) {
      out += format_double(mag);
    } else {
      if (!unit) out += format_double(mag) + "*";
      out += "e";
      if (q != Rational(1)) {
        out += "^";
        out += q.is_integer() ? q.str() : "(" + q.str() + ")";
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Series expression parser (also the CLI `hyper` grammar):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | primary ('^' exponent)?
//   primary := number | 'e' | '(' expr ')'
//   exponent := ['-'] integer | '(' rational ')'
// Integer exponents apply to any value; fractional exponents only to
// single-term positive monomials (that is all the round-trip format needs).
// ---------------------------------------------------------------------------

namespace {

class SeriesParser {
 public:
  SeriesParser(const std::string& text, Rational cut, std::int64_t exp_den)
      : text_(text), cut_(cut), exp_den_(exp_den) {}

  LeviCivitaNumber parse() {
    skip_ws();
    LeviCivitaNumber v = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, static_cast<int>(pos_) + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  LeviCivitaNumber parse_expr() {
    LeviCivitaNumber v = parse_term();
    while (true) {
      if (eat('+'))
        v = v + parse_term();
      else if (eat('-'))
        v = v - parse_term();
      else
        return v;
    }
  }

  LeviCivitaNumber parse_term() {
    LeviCivitaNumber v = parse_factor();
    while (true) {
      if (eat('*'))
        v = v * parse_factor();
      else if (eat('/'))
        v = v / parse_factor();
      else
        return v;
    }
  }

  LeviCivitaNumber parse_factor() {
    if (eat('-')) return -parse_factor();
    LeviCivitaNumber v = parse_primary();
    if (eat('^')) {
      const Rational q = parse_exponent();
      if (q.is_integer()) return pow(v, q.num());
      // Fractional exponent: monomial roots only.
      if (v.terms().size() != 1 || v.leading_coeff() <= 0)
        fail("fractional power requires a positive monomial base");
      const auto& t = v.terms().front();
      return LeviCivitaNumber::monomial(std::pow(t.coeff, q.to_double()), t.exponent * q, cut_,
                                        exp_den_);
    }
    return v;
  }

  Rational parse_exponent() {
    skip_ws();
    if (eat('(')) {
      const Rational q = parse_rational();
      if (!eat(')')) fail("expected ')' after exponent");
      return q;
    }
    return parse_rational();
  }

  Rational parse_rational() {
    const std::int64_t num = parse_integer();
    if (eat('/')) {
      const std::int64_t den = parse_integer();
      if (den == 0) fail("zero denominator in exponent");
      return Rational(num, den);
    }
    return Rational(num);
  }

  std::int64_t parse_integer() {
    skip_ws();
    bool neg = false;
    if (eat('-')) neg = true;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    std::int64_t value = 0;
    std::from_chars(text_.data() + start, text_.data() + pos_, value);
    return neg ? -value : value;
  }

  LeviCivitaNumber parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LeviCivitaNumber v = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (c == 'e') {
      ++pos_;
      return LeviCivitaNumber::epsilon(cut_, exp_den_);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    fail(std::string("unexpected character '") + c + "'");
  }

  LeviCivitaNumber parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    // Scientific notation: digits 'e'/'E' immediately followed by a signed
    // integer (distinguishes "2e3" the literal from "2*e^3" the series).
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        ++look;
        while (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look])))
          ++look;
        pos_ = look;
      }
    }
    double value = 0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) fail("malformed number literal");
    return LeviCivitaNumber::real(value, cut_, exp_den_);
  }

  const std::string& text_;
  Rational cut_;
  std::int64_t exp_den_;
  std::size_t pos_ = 0;
};

}  // namespace

LeviCivitaNumber parse_series(const std::string& text, Rational truncation_order,
                              std::int64_t exponent_den) {
  return SeriesParser(text, truncation_order, exponent_den).parse();
}

}  // namespace ultramorse
