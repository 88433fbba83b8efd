#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rcenter/envelope.hpp"
#include "rcenter/geometry.hpp"
#include "rcenter/lp_core.hpp"
#include "rcenter/model.hpp"

namespace rcenter {

/// Predecessor indices of the rectangle's lower-left corner for one point,
/// plus the number of grid columns (a) and rows (b) meeting the rectangle.
struct PredecessorCursor {
  std::size_t point = 0;
  std::size_t ix1 = 0;
  std::size_t iy1 = 0;
  std::size_t a = 1;
  std::size_t b = 1;
};

/// Cursor computed from scratch by binary search.
PredecessorCursor make_cursor(const PointPrep& prep, std::size_t point, const Rect& rect);

struct WalkStats {
  std::size_t events = 0;  // points along the line where cells were examined
  std::size_t planes = 0;
};

/// Appends the planes of every cell of the point's grid that meets the
/// rectangle and whose closure touches L inside the rectangle. Cells are
/// discovered by walking along L from its first boundary intersection.
void collect_planes_on_line(const PointPrep& prep, const PredecessorCursor& cursor,
                            const Rect& rect, const LineSpec& line, std::vector<Plane>& out,
                            WalkStats* stats = nullptr);

std::vector<Plane> collect_planes_on_line(const PointPrep& prep, const Rect& rect,
                                          const LineSpec& line, const PredecessorCursor& cursor);

struct DecisionOutcome {
  enum class Kind { FoundCenter, PositiveSide, NegativeSide };
  Kind kind = Kind::FoundCenter;
  Point2 point;  // set for FoundCenter
  double value = 0.0;
};

struct DecisionStats {
  std::size_t calls = 0;
  std::size_t planes = 0;
  std::size_t walk_events = 0;
  std::size_t walk_budget = 0;  // sum of a_i + b_i over all walks
  std::size_t max_excess = 0;   // max over walks of events - (a_i + b_i)
};

/// Decides whether a minimizer of the max expected distance over the region
/// (rect cut by the half-planes) lies on `line` and otherwise which side
/// holds it. Requires that the region contains a minimizer.
DecisionOutcome decide_side(std::span<const PointPrep> preps,
                            std::span<const PredecessorCursor> cursors, const Rect& rect,
                            std::span<const HalfPlane> cuts, const LineSpec& line,
                            DecisionStats* stats = nullptr, double rel_tol = 1e-9);

/// Convenience form over all points with fresh cursors and no cuts.
DecisionOutcome decide_side(std::span<const PointPrep> preps, const Rect& rect,
                            const LineSpec& line, double rel_tol = 1e-9);

}  // namespace rcenter
