#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ultramorse/critical.hpp"
#include "ultramorse/nat_poly.hpp"

namespace ultramorse {

struct Window {
  WindowKind kind = WindowKind::FullCoercive;
  double a = 0.0;  // used when kind == Custom
  double b = 0.0;
};

struct LadderConfig {
  std::vector<int> levels{4, 8, 16, 32};
  Window window;
  std::optional<NatPoly> betti;        // required for custom windows
  SolverConfig solver;
  std::optional<double> match_tol;     // empty: 1e-2 * min W-gap, floored at 1e-4
  int quad_points = 10;                // panels default to 2n per level

  /// Throws std::invalid_argument / WindowError on malformed configs.
  void validate() const;
};

/// Cross-level matching of one critical point: which point it maps to on each
/// level, the W-norm Cauchy increments between consecutive levels, and the
/// index history. Families span consecutive levels from first appearance.
struct MatchedFamily {
  int id = 0;
  std::vector<int> levels;             // consecutive ladder entries
  std::vector<int> point_index;        // position within that level's point list
  std::vector<double> values;
  std::vector<int> index_history;
  std::vector<double> w_increments;    // size = levels.size() - 1
  bool terminated = false;             // lost before the finest level (suspicious)
  // PSU diagnostic results (filled by run_ladder).
  std::optional<bool> converged;       // empty: fewer than 3 levels
  std::optional<double> rate;
};

struct LevelReport {
  int level = 0;
  std::vector<CriticalPoint> points;   // in-window, sorted by value
  bool degenerate = false;             // a degenerate point blocks M_t here
  std::vector<int> degenerate_points;
  std::optional<NatPoly> morse;
  std::optional<MorseRelationReport> relation;
};

struct StabilizationTrace {
  std::string problem_label;
  std::vector<LevelReport> per_level;
  std::vector<MatchedFamily> families;
  std::optional<int> stable_from;      // level from which count/indices/M_t are constant
  std::optional<NatPoly> m_limit;
};

struct Pairing {
  std::vector<std::pair<int, int>> pairs;   // (coarse index, fine index)
  std::vector<double> distances;            // per pair
  std::vector<int> unmatched_coarse;        // terminated families (reported)
  std::vector<int> unmatched_fine;          // new families
};

/// Greedy nearest-neighbour matching in the W-norm after embedding the coarse
/// points into the fine level: closest pairs claim each other first, pairs
/// beyond `tol` stay unmatched.
[[nodiscard]] Pairing match_points(const std::vector<CriticalPoint>& coarse,
                                   const std::vector<CriticalPoint>& fine,
                                   const LevelSpace& fine_level, double tol);

struct PsuResult {
  enum class Status { Converged, NotConverged, InsufficientData };
  Status status = Status::InsufficientData;
  std::optional<double> rate;  // log-log slope of increment vs level; empty on degenerate fits
};

/// Theorem-A style convergence diagnostic on a family's Cauchy increments:
/// converged iff they decrease strictly (exact zeros may repeat) and the last
/// one is below 1e-4. Needs at least 3 levels of history.
[[nodiscard]] PsuResult psu_diagnostic(const std::vector<double>& w_increments,
                                       const std::vector<int>& levels);

/// Runs search -> window -> Morse polynomial -> relation check on every level
/// of the ladder, matches points across consecutive levels into families,
/// runs the PSU diagnostic per family, and detects stabilization (the literal
/// constancy of count, index multiset and M_t over the tail).
[[nodiscard]] StabilizationTrace run_ladder(const FunctionalSpec& problem,
                                            const LadderConfig& cfg,
                                            Execution exec = Execution::Parallel);

}  // namespace ultramorse
