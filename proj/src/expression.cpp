#include "ultramorse/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "ultramorse/parse_error.hpp"

namespace ultramorse {

namespace {

class Constant;

ExprPtr constant(double v);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr power(ExprPtr base, ExprPtr exponent);

const Constant* as_constant(const ExprPtr& e);
bool is_constant(const ExprPtr& e, double v);

class Constant final : public Expr {
 public:
  explicit Constant(double v) : value_(v) {}
  double eval(double, double, double) const override { return value_; }
  ExprPtr diff(Var) const override { return constant(0.0); }
  std::string str() const override {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
    return std::string(buf, ptr);
  }
  [[nodiscard]] double value() const { return value_; }

 private:
  double value_;
};

class Variable final : public Expr {
 public:
  explicit Variable(Var v) : var_(v) {}
  double eval(double x, double u, double p) const override {
    switch (var_) {
      case Var::X: return x;
      case Var::U: return u;
      case Var::P: return p;
    }
    return 0.0;
  }
  ExprPtr diff(Var v) const override { return constant(v == var_ ? 1.0 : 0.0); }
  std::string str() const override {
    switch (var_) {
      case Var::X: return "x";
      case Var::U: return "u";
      case Var::P: return "p";
    }
    return "?";
  }

 private:
  Var var_;
};

class Binary final : public Expr {
 public:
  enum class Op { Add, Sub, Mul, Div, Pow };
  Binary(Op op, ExprPtr a, ExprPtr b) : op_(op), a_(std::move(a)), b_(std::move(b)) {}

  double eval(double x, double u, double p) const override {
    const double a = a_->eval(x, u, p);
    const double b = b_->eval(x, u, p);
    switch (op_) {
      case Op::Add: return a + b;
      case Op::Sub: return a - b;
      case Op::Mul: return a * b;
      case Op::Div: return a / b;
      case Op::Pow: return std::pow(a, b);
    }
    return 0.0;
  }

  ExprPtr diff(Var v) const override {
    switch (op_) {
      case Op::Add: return add(a_->diff(v), b_->diff(v));
      case Op::Sub: return sub(a_->diff(v), b_->diff(v));
      case Op::Mul: return add(mul(a_->diff(v), b_), mul(a_, b_->diff(v)));
      case Op::Div:
        // (a/b)' = a'/b - a b'/b^2
        return sub(div(a_->diff(v), b_), div(mul(a_, b_->diff(v)), mul(b_, b_)));
      case Op::Pow: {
        const Constant* c = as_constant(b_);
        if (!c)
          throw std::invalid_argument("cannot differentiate power with non-constant exponent: " +
                                      str());
        // (a^c)' = c a^(c-1) a'
        return mul(constant(c->value()),
                   mul(power(a_, constant(c->value() - 1.0)), a_->diff(v)));
      }
    }
    return constant(0.0);
  }

  std::string str() const override {
    const char* op = op_ == Op::Add   ? " + "
                     : op_ == Op::Sub ? " - "
                     : op_ == Op::Mul ? "*"
                     : op_ == Op::Div ? "/"
                                      : "^";
    return "(" + a_->str() + op + b_->str() + ")";
  }

 private:
  Op op_;
  ExprPtr a_, b_;
};

class Unary final : public Expr {
 public:
  enum class Op { Neg, Sin, Cos, Exp };
  Unary(Op op, ExprPtr a) : op_(op), a_(std::move(a)) {}

  double eval(double x, double u, double p) const override {
    const double a = a_->eval(x, u, p);
    switch (op_) {
      case Op::Neg: return -a;
      case Op::Sin: return std::sin(a);
      case Op::Cos: return std::cos(a);
      case Op::Exp: return std::exp(a);
    }
    return 0.0;
  }

  ExprPtr diff(Var v) const override {
    const ExprPtr da = a_->diff(v);
    switch (op_) {
      case Op::Neg: return std::make_shared<Unary>(Op::Neg, da);
      case Op::Sin: return mul(std::make_shared<Unary>(Op::Cos, a_), da);
      case Op::Cos:
        return mul(std::make_shared<Unary>(Op::Neg, std::make_shared<Unary>(Op::Sin, a_)), da);
      case Op::Exp: return mul(std::make_shared<Unary>(Op::Exp, a_), da);
    }
    return constant(0.0);
  }

  std::string str() const override {
    switch (op_) {
      case Op::Neg: return "(-" + a_->str() + ")";
      case Op::Sin: return "sin(" + a_->str() + ")";
      case Op::Cos: return "cos(" + a_->str() + ")";
      case Op::Exp: return "exp(" + a_->str() + ")";
    }
    return "?";
  }

 private:
  Op op_;
  ExprPtr a_;
};

ExprPtr constant(double v) { return std::make_shared<Constant>(v); }

const Constant* as_constant(const ExprPtr& e) { return dynamic_cast<const Constant*>(e.get()); }

bool is_constant(const ExprPtr& e, double v) {
  const Constant* c = as_constant(e);
  return c && c->value() == v;
}

// Light folding keeps derivative trees small; anything fancier is not worth it.
ExprPtr add(ExprPtr a, ExprPtr b) {
  if (is_constant(a, 0.0)) return b;
  if (is_constant(b, 0.0)) return a;
  if (as_constant(a) && as_constant(b))
    return constant(as_constant(a)->value() + as_constant(b)->value());
  return std::make_shared<Binary>(Binary::Op::Add, std::move(a), std::move(b));
}

ExprPtr sub(ExprPtr a, ExprPtr b) {
  if (is_constant(b, 0.0)) return a;
  if (as_constant(a) && as_constant(b))
    return constant(as_constant(a)->value() - as_constant(b)->value());
  return std::make_shared<Binary>(Binary::Op::Sub, std::move(a), std::move(b));
}

ExprPtr mul(ExprPtr a, ExprPtr b) {
  if (is_constant(a, 0.0) || is_constant(b, 0.0)) return constant(0.0);
  if (is_constant(a, 1.0)) return b;
  if (is_constant(b, 1.0)) return a;
  if (as_constant(a) && as_constant(b))
    return constant(as_constant(a)->value() * as_constant(b)->value());
  return std::make_shared<Binary>(Binary::Op::Mul, std::move(a), std::move(b));
}

ExprPtr div(ExprPtr a, ExprPtr b) {
  if (is_constant(a, 0.0)) return constant(0.0);
  if (is_constant(b, 1.0)) return a;
  return std::make_shared<Binary>(Binary::Op::Div, std::move(a), std::move(b));
}

ExprPtr power(ExprPtr base, ExprPtr exponent) {
  if (is_constant(exponent, 0.0)) return constant(1.0);
  if (is_constant(exponent, 1.0)) return base;
  return std::make_shared<Binary>(Binary::Op::Pow, std::move(base), std::move(exponent));
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
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

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    while (true) {
      if (eat('+'))
        e = add(e, parse_term());
      else if (eat('-'))
        e = sub(e, parse_term());
      else
        return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    while (true) {
      if (eat('*'))
        e = mul(e, parse_unary());
      else if (eat('/'))
        e = div(e, parse_unary());
      else
        return e;
    }
  }

  ExprPtr parse_unary() {
    if (eat('-')) return std::make_shared<Unary>(Unary::Op::Neg, parse_unary());
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    if (eat('^')) {
      // Right-associative; unary minus in the exponent is accepted.
      ExprPtr exp = eat('-') ? std::make_shared<Unary>(Unary::Op::Neg, parse_power())
                             : parse_power();
      return power(base, exp);
    }
    return base;
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  ExprPtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
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
    return constant(value);
  }

  ExprPtr parse_name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "x") return std::make_shared<Variable>(Expr::Var::X);
    if (name == "u") return std::make_shared<Variable>(Expr::Var::U);
    if (name == "p") return std::make_shared<Variable>(Expr::Var::P);
    Unary::Op op;
    if (name == "sin")
      op = Unary::Op::Sin;
    else if (name == "cos")
      op = Unary::Op::Cos;
    else if (name == "exp")
      op = Unary::Op::Exp;
    else {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (!eat('(')) fail("expected '(' after function name");
    ExprPtr arg = parse_expr();
    if (!eat(')')) fail("expected ')'");
    return std::make_shared<Unary>(op, arg);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(const std::string& text) { return ExprParser(text).parse(); }

ExprPtr make_constant(double value) { return constant(value); }

}  // namespace ultramorse
