#include "ultramorse/assembly.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ultramorse::assembly {

namespace {

struct NodeChunk {
  Eigen::Index begin;
  Eigen::Index end;
};

// Fixed partition: one chunk per quadrature panel. Independent of the thread
// count, so the ordered reduction below is bitwise reproducible.
std::vector<NodeChunk> panel_chunks(const LevelSpace& level) {
  const auto total = static_cast<Eigen::Index>(level.quadrature().size());
  const Eigen::Index per = level.quad_spec().points;
  std::vector<NodeChunk> chunks;
  chunks.reserve(static_cast<std::size_t>((total + per - 1) / per));
  for (Eigen::Index b = 0; b < total; b += per) chunks.push_back({b, std::min(b + per, total)});
  return chunks;
}

// First non-finite node index (or -1), reduced to the smallest across chunks
// so the reported node does not depend on scheduling.
void throw_if_bad(const std::vector<Eigen::Index>& bad, const LevelSpace& level,
                  const char* kernel) {
  Eigen::Index worst = -1;
  for (const auto i : bad) {
    if (i >= 0 && (worst < 0 || i < worst)) worst = i;
  }
  if (worst >= 0)
    throw EvaluationError(std::string(kernel) + ": non-finite integrand value",
                          level.quadrature().nodes[static_cast<std::size_t>(worst)]);
}

}  // namespace

double energy(const LevelSpace& level, const Eigen::VectorXd& coeffs) {
  const auto& quad = level.quadrature();
  const Eigen::VectorXd u = level.basis_values() * coeffs;
  const Eigen::VectorXd du = level.basis_derivs() * coeffs;
  const auto chunks = panel_chunks(level);
  const auto nc = static_cast<std::int64_t>(chunks.size());

  std::vector<double> partial(chunks.size(), 0.0);
  std::vector<Eigen::Index> bad(chunks.size(), -1);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < nc; ++c) {
    const auto& ch = chunks[static_cast<std::size_t>(c)];
    double acc = 0.0;
    for (Eigen::Index i = ch.begin; i < ch.end; ++i) {
      const double x = quad.nodes[static_cast<std::size_t>(i)];
      const double f = level.problem().F(x, u[i], du[i]);
      if (!std::isfinite(f)) {
        if (bad[static_cast<std::size_t>(c)] < 0) bad[static_cast<std::size_t>(c)] = i;
        continue;
      }
      acc += quad.weights[static_cast<std::size_t>(i)] * f;
    }
    partial[static_cast<std::size_t>(c)] = acc;
  }
  throw_if_bad(bad, level, "energy");

  double total = 0.0;
  for (const double p : partial) total += p;
  return total;
}

Eigen::VectorXd gradient(const LevelSpace& level, const Eigen::VectorXd& coeffs) {
  const auto& quad = level.quadrature();
  const int n = level.dimension();
  const Eigen::VectorXd u = level.basis_values() * coeffs;
  const Eigen::VectorXd du = level.basis_derivs() * coeffs;
  const auto chunks = panel_chunks(level);
  const auto nc = static_cast<std::int64_t>(chunks.size());

  std::vector<Eigen::VectorXd> partial(chunks.size());
  std::vector<Eigen::Index> bad(chunks.size(), -1);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < nc; ++c) {
    const auto& ch = chunks[static_cast<std::size_t>(c)];
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = ch.begin; i < ch.end; ++i) {
      const double x = quad.nodes[static_cast<std::size_t>(i)];
      const double w = quad.weights[static_cast<std::size_t>(i)];
      const double fu = level.problem().F_u(x, u[i], du[i]);
      const double fp = level.problem().F_p(x, u[i], du[i]);
      if (!std::isfinite(fu) || !std::isfinite(fp)) {
        if (bad[static_cast<std::size_t>(c)] < 0) bad[static_cast<std::size_t>(c)] = i;
        continue;
      }
      acc.noalias() += (w * fp) * level.basis_derivs().row(i).transpose();
      acc.noalias() += (w * fu) * level.basis_values().row(i).transpose();
    }
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  }
  throw_if_bad(bad, level, "gradient");

  Eigen::VectorXd g = Eigen::VectorXd::Zero(n);
  for (const auto& p : partial) g += p;
  return g;
}

Eigen::MatrixXd hessian(const LevelSpace& level, const Eigen::VectorXd& coeffs) {
  const auto& quad = level.quadrature();
  const int n = level.dimension();
  const Eigen::VectorXd u = level.basis_values() * coeffs;
  const Eigen::VectorXd du = level.basis_derivs() * coeffs;
  const auto chunks = panel_chunks(level);
  const auto nc = static_cast<std::int64_t>(chunks.size());

  std::vector<Eigen::MatrixXd> partial(chunks.size());
  std::vector<Eigen::Index> bad(chunks.size(), -1);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t c = 0; c < nc; ++c) {
    const auto& ch = chunks[static_cast<std::size_t>(c)];
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    auto sym = acc.selfadjointView<Eigen::Lower>();
    Eigen::VectorXd b(n), bd(n);
    for (Eigen::Index i = ch.begin; i < ch.end; ++i) {
      const double x = quad.nodes[static_cast<std::size_t>(i)];
      const double w = quad.weights[static_cast<std::size_t>(i)];
      const double fuu = level.problem().F_uu(x, u[i], du[i]);
      const double fup = level.problem().F_up(x, u[i], du[i]);
      const double fpp = level.problem().F_pp(x, u[i], du[i]);
      if (!std::isfinite(fuu) || !std::isfinite(fup) || !std::isfinite(fpp)) {
        if (bad[static_cast<std::size_t>(c)] < 0) bad[static_cast<std::size_t>(c)] = i;
        continue;
      }
      b = level.basis_values().row(i).transpose();
      bd = level.basis_derivs().row(i).transpose();
      if (fpp != 0.0) sym.rankUpdate(bd, w * fpp);
      if (fuu != 0.0) sym.rankUpdate(b, w * fuu);
      if (fup != 0.0) sym.rankUpdate(b, bd, w * fup);
    }
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  }
  throw_if_bad(bad, level, "hessian");

  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(n, n);
  for (const auto& p : partial) lower += p;
  Eigen::MatrixXd h = lower.selfadjointView<Eigen::Lower>();
  return 0.5 * (h + h.transpose());
}

}  // namespace ultramorse::assembly
