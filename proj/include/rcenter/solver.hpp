#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rcenter/decision.hpp"
#include "rcenter/envelope.hpp"
#include "rcenter/geometry.hpp"
#include "rcenter/model.hpp"

namespace rcenter {

struct SolverConfig {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::size_t small_threshold = 32;  // outer rounds run while more points remain
  bool trace = false;
};

/// One active point: its coordinate sublists inside the current rectangle are
/// the index ranges [x_begin, x_end) of xs and [y_begin, y_end) of ys.
struct PointTrack {
  std::size_t point = 0;
  std::size_t x_begin = 1;
  std::size_t x_end = 1;
  std::size_t y_begin = 1;
  std::size_t y_end = 1;

  std::size_t ix1() const { return x_begin - 1; }
  std::size_t iy1() const { return y_begin - 1; }
  std::size_t x_count() const { return x_end - x_begin; }
  std::size_t y_count() const { return y_end - y_begin; }
};

struct SolverState {
  std::vector<PointTrack> active;
  Rect rect;
  std::vector<HalfPlane> cuts;  // slanted decisions from prune rounds
  std::size_t x_total = 0;
  std::size_t y_total = 0;

  std::vector<PredecessorCursor> cursors() const;
};

struct Found {
  Point2 point;
  double value = 0.0;
};

struct StepRecord {
  std::size_t round = 0;
  std::size_t x_before = 0;
  std::size_t y_before = 0;
  std::size_t x_after = 0;
  std::size_t y_after = 0;
};

struct RoundRecord {
  std::size_t round = 0;
  std::size_t active = 0;
  std::size_t steps = 0;
  std::size_t x_total = 0;  // after the inner steps
  std::size_t y_total = 0;
  std::size_t pstar = 0;
  std::size_t pruned = 0;
  bool general_position = true;
  bool found_center = false;
};

struct TraceEvent {
  std::size_t round = 0;
  std::size_t step = 0;
  std::string kind;  // inner_x, inner_y, prune_slanted, prune_x, prune_vertical, finish
  Rect rect;
  double median = 0.0;
  std::string decision;  // positive, negative, center
  std::vector<std::size_t> pruned_indices;
};

struct SolverStats {
  std::size_t rounds = 0;
  std::size_t inner_steps = 0;
  std::size_t pruned = 0;
  std::size_t finish_points = 0;
  DecisionStats decisions;
  std::vector<StepRecord> steps;
  std::vector<RoundRecord> round_records;
  std::vector<TraceEvent> trace;
};

struct Prunable {
  std::vector<std::size_t> members;  // original point indices
  std::vector<Plane> relevant;       // one per member
};

struct PruneResult {
  std::optional<Found> found;
  std::size_t pruned = 0;
  bool general_position = true;
};

/// Prune-and-search driver over prepared points. All rectangles and cuts are
/// in the coordinates of the preps.
class Solver {
 public:
  Solver(std::span<const PointPrep> preps, SolverConfig config = {});

  /// Padded bounding box of every location; contains a center.
  static Rect initial_rect(std::span<const PointPrep> preps);

  /// All points active, rect = initial_rect, full sublists.
  SolverState initial_state() const;
  /// Same with a caller-chosen rectangle (must contain a center).
  SolverState state_for(const Rect& rect) const;

  /// Inner steps per round: 2 + ceil(log2 m).
  std::size_t steps_per_round() const;

  /// Halves the x and y sublist totals with two decisions at their medians.
  std::optional<Found> inner_shrink_step(SolverState& state);
  Prunable find_prunable(const SolverState& state) const;
  /// Pairs the prunable points and removes the dominated member of every
  /// pair whose divider provably misses the region holding the center.
  PruneResult prune_round(SolverState& state, const Prunable& prunable);
  /// Shrinks until each point meets at most 3x3 cells, then solves the LP of
  /// the remaining planes over the region.
  Found finish_small(SolverState& state);

  /// Full run; the value is the max expected distance over all preps.
  Found run();

  const SolverStats& stats() const { return stats_; }

 private:
  std::optional<Found> decide(SolverState& state, const LineSpec& line, DecisionOutcome& out,
                              const char* kind, double median);
  void shrink_x(SolverState& state, double bound, bool keep_right) const;
  void shrink_y(SolverState& state, double bound, bool keep_above) const;
  static void recount(SolverState& state);
  void remove_points(SolverState& state, const std::vector<std::size_t>& points) const;

  std::span<const PointPrep> preps_;
  SolverConfig config_;
  std::mt19937_64 rng_;
  SolverStats stats_;
  std::size_t round_ = 0;
  std::size_t step_ = 0;
};

struct Solution {
  Point2 center;
  double objective = 0.0;
  SolverStats stats;
};

/// Validates, applies the weight and metric reductions, and solves.
Solution solve(const Instance& instance, const SolverConfig& config = {});

}  // namespace rcenter
