#include "ultramorse/functional.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ultramorse/expression.hpp"

namespace ultramorse {

namespace {

// Additive-recurrence (Kronecker) sequence: cheap, deterministic, and well
// spread over the sample box.
struct QuasiRandom {
  double s1 = 0.5, s2 = 0.5, s3 = 0.5;
  static constexpr double a1 = 0.6180339887498949;   // 1/phi
  static constexpr double a2 = 0.7548776662466927;   // plastic-number based
  static constexpr double a3 = 0.5698402909980532;

  void next() {
    s1 = std::fmod(s1 + a1, 1.0);
    s2 = std::fmod(s2 + a2, 1.0);
    s3 = std::fmod(s3 + a3, 1.0);
  }
};

double rel_dev(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (pass ? "PASS" : "FAIL") << " (tolerance " << tolerance << ")";
  for (const auto& p : partials) {
    os << "\n  " << p.name << ": max rel dev " << p.max_rel_dev;
    if (!p.finite) os << " [non-finite value]";
    os << " at (x=" << p.worst_x << ", u=" << p.worst_u << ", p=" << p.worst_p << ")";
  }
  return os.str();
}

ValidationReport validate_spec(const FunctionalSpec& spec, int samples, double tolerance) {
  ValidationReport report;
  report.tolerance = tolerance;
  report.partials = {{"F_u"}, {"F_p"}, {"F_uu"}, {"F_up"}, {"F_pp"}};

  const double hu = 1e-5, hp = 1e-5;    // first differences
  const double Hu = 1e-4, Hp = 1e-4;    // second differences
  QuasiRandom q;
  bool ok = true;

  for (int i = 0; i < samples; ++i) {
    q.next();
    const double x = spec.x0 + q.s1 * (spec.x1 - spec.x0);
    const double u = -3.0 + 6.0 * q.s2;
    const double p = -3.0 + 6.0 * q.s3;

    const auto F = [&](double du, double dp) { return spec.F(x, u + du, p + dp); };

    const double fd[5] = {
        (F(hu, 0) - F(-hu, 0)) / (2 * hu),
        (F(0, hp) - F(0, -hp)) / (2 * hp),
        (F(Hu, 0) - 2 * F(0, 0) + F(-Hu, 0)) / (Hu * Hu),
        (F(Hu, Hp) - F(Hu, -Hp) - F(-Hu, Hp) + F(-Hu, -Hp)) / (4 * Hu * Hp),
        (F(0, Hp) - 2 * F(0, 0) + F(0, -Hp)) / (Hp * Hp),
    };
    const double analytic[5] = {spec.F_u(x, u, p), spec.F_p(x, u, p), spec.F_uu(x, u, p),
                                spec.F_up(x, u, p), spec.F_pp(x, u, p)};

    for (int k = 0; k < 5; ++k) {
      auto& pc = report.partials[static_cast<std::size_t>(k)];
      if (!std::isfinite(analytic[k]) || !std::isfinite(fd[k])) {
        pc.finite = false;
        pc.worst_x = x;
        pc.worst_u = u;
        pc.worst_p = p;
        ok = false;
        continue;
      }
      const double dev = rel_dev(analytic[k], fd[k]);
      if (dev > pc.max_rel_dev) {
        pc.max_rel_dev = dev;
        pc.worst_x = x;
        pc.worst_u = u;
        pc.worst_p = p;
      }
    }
  }

  for (const auto& pc : report.partials) {
    if (!pc.finite || pc.max_rel_dev > tolerance) ok = false;
  }
  report.pass = ok;
  return report;
}

ModelProblem chafee_infante(double mu) {
  if (!(mu > 0.0))
    throw std::invalid_argument("chafee_infante: mu must be positive, got " + std::to_string(mu));

  FunctionalSpec spec;
  spec.x0 = 0.0;
  spec.x1 = std::numbers::pi;
  spec.F = [mu](double, double u, double p) {
    return 0.5 * p * p - 0.5 * mu * u * u + 0.25 * u * u * u * u;
  };
  spec.F_u = [mu](double, double u, double) { return -mu * u + u * u * u; };
  spec.F_p = [](double, double, double p) { return p; };
  spec.F_uu = [mu](double, double u, double) { return -mu + 3.0 * u * u; };
  spec.F_up = [](double, double, double) { return 0.0; };
  spec.F_pp = [](double, double, double) { return 1.0; };
  spec.label = "chafee_infante(mu=" + std::to_string(mu) + ")";

  ModelProblem problem;
  problem.spec = std::move(spec);
  problem.mu = mu;
  // Branch counts below the first three eigenvalues 1, 4, 9 of -u'' on (0,pi).
  if (mu < 1.0) {
    problem.known_facts = KnownFacts{1, {0}};
  } else if (mu > 1.0 && mu < 4.0) {
    problem.known_facts = KnownFacts{3, {0, 0, 1}};
  } else if (mu > 4.0 && mu < 9.0) {
    problem.known_facts = KnownFacts{5, {0, 0, 1, 1, 2}};
  }
  return problem;
}

FunctionalSpec functional_from_expression(const std::string& density, double x0, double x1,
                                          const std::string& label) {
  if (!(x0 < x1)) throw std::invalid_argument("functional domain requires x0 < x1");
  const ExprPtr f = parse_expression(density);
  const ExprPtr fu = f->diff(Expr::Var::U);
  const ExprPtr fp = f->diff(Expr::Var::P);
  const ExprPtr fuu = fu->diff(Expr::Var::U);
  const ExprPtr fup = fu->diff(Expr::Var::P);
  const ExprPtr fpp = fp->diff(Expr::Var::P);

  const auto bind = [](ExprPtr e) {
    return [e = std::move(e)](double x, double u, double p) { return e->eval(x, u, p); };
  };

  FunctionalSpec spec;
  spec.x0 = x0;
  spec.x1 = x1;
  spec.F = bind(f);
  spec.F_u = bind(fu);
  spec.F_p = bind(fp);
  spec.F_uu = bind(fuu);
  spec.F_up = bind(fup);
  spec.F_pp = bind(fpp);
  spec.label = label.empty() ? density : label;

  const ValidationReport report = validate_spec(spec);
  if (!report.pass)
    throw std::invalid_argument("expression functional failed validation:\n" + report.summary());
  return spec;
}

}  // namespace ultramorse
