#include "rcenter/decision.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rcenter {

PredecessorCursor make_cursor(const PointPrep& prep, std::size_t point, const Rect& rect) {
  PredecessorCursor c;
  c.point = point;
  c.ix1 = predecessor_index(prep.xs, rect.x1);
  c.iy1 = predecessor_index(prep.ys, rect.y1);
  // Values strictly inside (x1, x2) each open one more column.
  const auto xend = std::lower_bound(prep.xs.begin() + 1, prep.xs.end(), rect.x2) - prep.xs.begin();
  const auto yend = std::lower_bound(prep.ys.begin() + 1, prep.ys.end(), rect.y2) - prep.ys.begin();
  c.a = static_cast<std::size_t>(std::max<std::ptrdiff_t>(xend - static_cast<std::ptrdiff_t>(c.ix1), 1));
  c.b = static_cast<std::size_t>(std::max<std::ptrdiff_t>(yend - static_cast<std::ptrdiff_t>(c.iy1), 1));
  return c;
}

namespace {

// Range of slabs (columns or rows) whose closure contains a coordinate,
// limited to [first, last]. Moving monotonically costs amortized O(1).
class SlabCursor {
 public:
  SlabCursor(const std::vector<double>& edges, std::size_t first, std::size_t last)
      : edges_(edges), first_(first), last_(last), hi_(first) {}

  std::pair<std::size_t, std::size_t> locate(double z) {
    const double tol = 1e-9 * (1.0 + std::abs(z));
    while (hi_ < last_ && edges_[hi_ + 1] <= z + tol) ++hi_;
    while (hi_ > first_ && edges_[hi_] > z + tol) --hi_;
    std::size_t lo = hi_;
    while (lo > first_ && edges_[lo] >= z - tol) --lo;
    return {lo, hi_};
  }

 private:
  const std::vector<double>& edges_;
  std::size_t first_;
  std::size_t last_;
  std::size_t hi_;
};

struct CellBox {
  std::size_t c0 = 1;
  std::size_t c1 = 0;
  std::size_t r0 = 1;
  std::size_t r1 = 0;

  bool contains(std::size_t c, std::size_t r) const {
    return c >= c0 && c <= c1 && r >= r0 && r <= r1;
  }
};

}  // namespace

void collect_planes_on_line(const PointPrep& prep, const PredecessorCursor& cursor,
                            const Rect& rect, const LineSpec& line, std::vector<Plane>& out,
                            WalkStats* stats) {
  const auto seg = clip_line(line, rect);
  if (!seg) throw std::invalid_argument("line does not intersect the rectangle");
  const auto [t0, t1] = *seg;
  if (!std::isfinite(t0) || !std::isfinite(t1))
    throw std::invalid_argument("plane collection needs a bounded segment");

  const std::size_t m = prep.m();
  const std::size_t xfirst = cursor.ix1;
  const std::size_t xlast = std::min(m, cursor.ix1 + cursor.a - 1);
  const std::size_t yfirst = cursor.iy1;
  const std::size_t ylast = std::min(m, cursor.iy1 + cursor.b - 1);

  const Point2 start = line.at(t0);
  const Point2 d = line.direction();
  SlabCursor cols(prep.xs, xfirst, xlast);
  SlabCursor rows(prep.ys, yfirst, ylast);
  CellBox prev;
  std::size_t events = 0;
  const std::size_t before = out.size();

  auto visit = [&](Point2 q) {
    const auto [c0, c1] = cols.locate(q.x);
    const auto [r0, r1] = rows.locate(q.y);
    for (std::size_t c = c0; c <= c1; ++c)
      for (std::size_t r = r0; r <= r1; ++r)
        if (!prev.contains(c, r)) out.push_back(plane_for_cell(prep, c, r, cursor.point));
    prev = {c0, c1, r0, r1};
    ++events;
  };

  // Next grid values the walk will cross, in walk order.
  std::size_t kx = xfirst + 1;
  if (d.x > 0.0)
    while (kx <= xlast && prep.xs[kx] <= start.x) ++kx;
  std::size_t ky = 0;
  if (d.y > 0.0) {
    ky = yfirst + 1;
    while (ky <= ylast && prep.ys[ky] <= start.y) ++ky;
  } else if (d.y < 0.0) {
    ky = ylast;
    while (ky >= yfirst + 1 && prep.ys[ky] >= start.y) --ky;
  }
  auto next_x = [&]() {
    return (d.x > 0.0 && kx <= xlast) ? t0 + (prep.xs[kx] - start.x) / d.x : kInf;
  };
  auto next_y = [&]() {
    if (d.y > 0.0 && ky <= ylast) return t0 + (prep.ys[ky] - start.y) / d.y;
    if (d.y < 0.0 && ky >= yfirst + 1) return t0 + (prep.ys[ky] - start.y) / d.y;
    return kInf;
  };

  visit(start);
  for (;;) {
    const double tx = next_x();
    const double ty = next_y();
    const double t = std::min(tx, ty);
    if (!(t < t1)) break;
    Point2 q{start.x + (t - t0) * d.x, start.y + (t - t0) * d.y};
    if (tx <= t) {
      q.x = prep.xs[kx];
      ++kx;
    }
    if (ty <= t) {
      q.y = prep.ys[ky];
      if (d.y > 0.0)
        ++ky;
      else
        --ky;
    }
    visit(q);
  }
  visit(line.at(t1));

  if (stats != nullptr) {
    stats->events += events;
    stats->planes += out.size() - before;
  }
}

std::vector<Plane> collect_planes_on_line(const PointPrep& prep, const Rect& rect,
                                          const LineSpec& line, const PredecessorCursor& cursor) {
  std::vector<Plane> out;
  collect_planes_on_line(prep, cursor, rect, line, out);
  return out;
}

namespace {

DecisionOutcome side_of_region(const Rect& rect, std::span<const HalfPlane> cuts,
                               const LineSpec& line) {
  const auto poly = clip_polygon(rect, cuts);
  Point2 probe{0.5 * (rect.x1 + rect.x2), 0.5 * (rect.y1 + rect.y2)};
  if (!poly.empty()) {
    probe = {0.0, 0.0};
    for (const Point2& p : poly) {
      probe.x += p.x;
      probe.y += p.y;
    }
    probe.x /= static_cast<double>(poly.size());
    probe.y /= static_cast<double>(poly.size());
  }
  DecisionOutcome out;
  out.kind = line.offset(probe) >= 0.0 ? DecisionOutcome::Kind::PositiveSide
                                       : DecisionOutcome::Kind::NegativeSide;
  return out;
}

}  // namespace

DecisionOutcome decide_side(std::span<const PointPrep> preps,
                            std::span<const PredecessorCursor> cursors, const Rect& rect,
                            std::span<const HalfPlane> cuts, const LineSpec& line,
                            DecisionStats* stats, double rel_tol) {
  if (stats != nullptr) ++stats->calls;
  const auto seg = clip_line(line, rect, cuts);
  if (!seg) return side_of_region(rect, cuts, line);

  std::vector<Plane> planes;
  for (const PredecessorCursor& c : cursors) {
    WalkStats ws;
    collect_planes_on_line(preps[c.point], c, rect, line, planes, &ws);
    if (stats != nullptr) {
      stats->walk_events += ws.events;
      stats->walk_budget += c.a + c.b;
      if (ws.events > c.a + c.b)
        stats->max_excess = std::max(stats->max_excess, ws.events - (c.a + c.b));
    }
  }
  if (stats != nullptr) stats->planes += planes.size();
  if (planes.empty()) throw std::invalid_argument("decision needs at least one point");

  const SegmentMin best = min_envelope_on_segment(planes, {line, seg->first, seg->second}, rel_tol);
  std::vector<Plane> tight;
  tight.reserve(best.tight.size());
  for (std::size_t k : best.tight) tight.push_back(planes[k]);

  const Point2 q = best.point;
  const double tol = rel_tol * (1.0 + std::max(std::abs(q.x), std::abs(q.y)));
  Cone cone;
  if (std::abs(q.x - rect.x1) <= tol) cone.normals.push_back({-1.0, 0.0});
  if (std::abs(q.x - rect.x2) <= tol) cone.normals.push_back({1.0, 0.0});
  if (std::abs(q.y - rect.y1) <= tol) cone.normals.push_back({0.0, -1.0});
  if (std::abs(q.y - rect.y2) <= tol) cone.normals.push_back({0.0, 1.0});
  for (const HalfPlane& h : cuts)
    if (std::abs(h.slack(q)) <= tol) cone.normals.push_back({h.a, h.b});

  DecisionOutcome out;
  switch (descent_side(tight, line, q, &cone, rel_tol)) {
    case Side::PositiveSide:
      out.kind = DecisionOutcome::Kind::PositiveSide;
      break;
    case Side::NegativeSide:
      out.kind = DecisionOutcome::Kind::NegativeSide;
      break;
    case Side::NoDescent:
      out.kind = DecisionOutcome::Kind::FoundCenter;
      out.point = q;
      out.value = best.value;
      break;
  }
  return out;
}

DecisionOutcome decide_side(std::span<const PointPrep> preps, const Rect& rect,
                            const LineSpec& line, double rel_tol) {
  std::vector<PredecessorCursor> cursors;
  cursors.reserve(preps.size());
  for (std::size_t i = 0; i < preps.size(); ++i) cursors.push_back(make_cursor(preps[i], i, rect));
  return decide_side(preps, cursors, rect, {}, line, nullptr, rel_tol);
}

}  // namespace rcenter
