#include "ultramorse/critical.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>

#include "ultramorse/assembly.hpp"

namespace ultramorse {

namespace {

constexpr double kDivergenceNorm = 1e6;  // iterates beyond this are lost causes
constexpr double kDistanceFloor = 1e-80;
constexpr int kBatchSize = 8;            // fixed, so batching is thread-count independent

// Box-Muller over mt19937_64: pinned by the standard, unlike the library
// normal_distribution, so seeds reproduce across toolchains.
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;          // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// (grad M . step) / M for the product deflation operator; the deflated Newton
// step is then step / (1 - s).
double deflation_slope(const LevelSpace& level, const Eigen::VectorXd& v,
                       const Eigen::VectorXd& step, const std::vector<CriticalPoint>& deflated,
                       const SolverConfig& cfg) {
  if (deflated.empty()) return 0.0;
  const Eigen::VectorXd w2 = level.mode_frequencies().array().square();
  double s = 0.0;
  for (const auto& pt : deflated) {
    const Eigen::VectorXd diff = v - pt.v.coeffs;
    const double d = std::max(level.w_norm(diff), kDistanceFloor);
    const double d_pow = std::pow(d, -cfg.deflation_power);
    const double m = d_pow + cfg.deflation_shift;
    const double grad_d_dot_step = diff.cwiseProduct(w2.matrix()).dot(step) / d;
    s += -cfg.deflation_power * d_pow / d * grad_d_dot_step / m;
  }
  return s;
}

}  // namespace

void SolverConfig::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string("SolverConfig: ") + name + " must be positive");
  };
  positive(tol_grad, "tol_grad");
  positive(deflation_power, "deflation_power");
  positive(deflation_shift, "deflation_shift");
  positive(distinct_tol, "distinct_tol");
  positive(eig_tol, "eig_tol");
  if (max_newton_iter < 1) throw std::invalid_argument("SolverConfig: max_newton_iter must be >= 1");
  if (n_starts < 1) throw std::invalid_argument("SolverConfig: n_starts must be >= 1");
}

MorseData morse_data(const LevelSpace& level, const Eigen::VectorXd& coeffs, double eig_tol) {
  const Eigen::MatrixXd h = assembly::hessian(level, coeffs);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("morse_data: symmetric eigensolver failed to converge");

  MorseData data;
  const auto& ev = solver.eigenvalues();
  data.spectrum.assign(ev.data(), ev.data() + ev.size());
  data.morse_index = 0;
  data.min_abs_eig = std::numeric_limits<double>::infinity();
  for (const double lambda : data.spectrum) {
    if (lambda < -eig_tol) ++data.morse_index;
    data.min_abs_eig = std::min(data.min_abs_eig, std::abs(lambda));
  }
  data.nondegenerate = data.min_abs_eig > eig_tol;
  return data;
}

std::optional<CriticalPoint> newton_solve(std::shared_ptr<const LevelSpace> level,
                                          const Eigen::VectorXd& start, const SolverConfig& cfg,
                                          const std::vector<CriticalPoint>& deflated) {
  cfg.validate();
  if (start.size() != level->dimension())
    throw std::invalid_argument("newton_solve: start vector does not match the level dimension");

  Eigen::VectorXd v = start;
  int tikhonov_retries = 0;

  for (int iter = 1; iter <= cfg.max_newton_iter; ++iter) {
    if (!v.allFinite() || v.norm() > kDivergenceNorm) return std::nullopt;

    Eigen::VectorXd g;
    try {
      g = assembly::gradient(*level, v);
    } catch (const EvaluationError&) {
      return std::nullopt;  // iterate left the region where F is finite
    }
    const double gn = g.norm();

    if (gn < cfg.tol_grad) {
      for (const auto& pt : deflated) {
        if (level->w_distance(v, pt.v.coeffs) <= cfg.distinct_tol) return std::nullopt;
      }
      const MorseData md = morse_data(*level, v, cfg.eig_tol);
      CriticalPoint out;
      out.v = {v, level};
      out.value = assembly::energy(*level, v);
      out.grad_norm = gn;
      out.spectrum = md.spectrum;
      out.morse_index = md.morse_index;
      out.nondegenerate = md.nondegenerate;
      out.min_abs_eig = md.min_abs_eig;
      out.newton_iterations = iter;
      return out;
    }

    Eigen::MatrixXd h;
    try {
      h = assembly::hessian(*level, v);
    } catch (const EvaluationError&) {
      return std::nullopt;
    }

    Eigen::VectorXd step;
    while (true) {
      step = Eigen::PartialPivLU<Eigen::MatrixXd>(h).solve(-g);
      const bool ok = step.allFinite() && (h * step + g).norm() <= 1e-6 * std::max(gn, 1e-300);
      if (ok) break;
      if (++tikhonov_retries > 3) return std::nullopt;
      h.diagonal().array() += 1e-8;
    }

    const double s = deflation_slope(*level, v, step, deflated, cfg);
    const double scale = 1.0 / (1.0 - s);
    if (!std::isfinite(scale)) return std::nullopt;
    v += scale * step;
  }
  return std::nullopt;  // iteration budget exhausted
}

std::vector<CriticalPoint> deflated_search(std::shared_ptr<const LevelSpace> level,
                                           const SolverConfig& cfg, Execution exec) {
  cfg.validate();
  const int n = level->dimension();

  std::vector<Eigen::VectorXd> starts;
  starts.reserve(static_cast<std::size_t>(cfg.n_starts) + 1);
  starts.push_back(Eigen::VectorXd::Zero(n));
  GaussianSampler gauss(cfg.seed);
  for (int s = 0; s < cfg.n_starts; ++s) {
    Eigen::VectorXd v(n);
    for (int k = 1; k <= n; ++k) v[k - 1] = gauss.next() / k;
    starts.push_back(std::move(v));
  }

  std::vector<CriticalPoint> found;
  const auto total = static_cast<std::int64_t>(starts.size());
  for (std::int64_t base = 0; base < total; base += kBatchSize) {
    const std::int64_t count = std::min<std::int64_t>(kBatchSize, total - base);
    std::vector<std::optional<CriticalPoint>> results(static_cast<std::size_t>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));

    if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
      for (std::int64_t i = 0; i < count; ++i) {
        try {
          results[static_cast<std::size_t>(i)] =
              newton_solve(level, starts[static_cast<std::size_t>(base + i)], cfg, found);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (std::int64_t i = 0; i < count; ++i) {
        results[static_cast<std::size_t>(i)] =
            newton_solve(level, starts[static_cast<std::size_t>(base + i)], cfg, found);
      }
    }

    // Single-writer merge in start order; first-found point wins.
    for (auto& r : results) {
      if (!r) continue;
      bool distinct = true;
      for (const auto& kept : found) {
        if (level->w_distance(r->v.coeffs, kept.v.coeffs) <= cfg.distinct_tol) {
          distinct = false;
          break;
        }
      }
      if (distinct) found.push_back(std::move(*r));
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const CriticalPoint& a, const CriticalPoint& b) { return a.value < b.value; });
  return found;
}

std::vector<CriticalPoint> filter_window(const std::vector<CriticalPoint>& points, double a,
                                         double b) {
  if (!(a < b)) throw WindowError("filter_window: requires a < b");
  std::vector<CriticalPoint> out;
  for (const auto& p : points) {
    if (p.value > a && p.value <= b) out.push_back(p);
  }
  return out;
}

}  // namespace ultramorse
