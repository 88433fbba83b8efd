#include "rcenter/lp_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rcenter {

namespace {

struct OpenPair {
  Line1D low_slope;
  Line1D high_slope;
  double cross = 0.0;
};

Min1D brute_force_min(std::span<const Line1D> lines, double lo, double hi) {
  auto envelope = [&](double t) {
    double v = -kInf;
    for (const auto& l : lines) v = std::max(v, l(t));
    return v;
  };
  Min1D best{lo, envelope(lo)};
  auto consider = [&](double t) {
    const double v = envelope(t);
    if (v < best.value) best = {t, v};
  };
  consider(hi);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double ds = lines[i].slope - lines[j].slope;
      if (ds == 0.0) continue;
      const double t = (lines[j].intercept - lines[i].intercept) / ds;
      if (t > lo && t < hi) consider(t);
    }
  }
  return best;
}

}  // namespace

Min1D minimize_max_of_lines(std::span<const Line1D> lines, double lo, double hi) {
  if (lines.empty()) throw std::invalid_argument("no lines to minimize over");
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("interval must be finite and ordered");

  std::vector<Line1D> pool(lines.begin(), lines.end());
  std::vector<Line1D> next;
  std::vector<OpenPair> open;
  std::vector<double> crosses;

  while (pool.size() > 3 && lo < hi) {
    next.clear();
    open.clear();
    for (std::size_t i = 0; i + 1 < pool.size(); i += 2) {
      Line1D p = pool[i];
      Line1D q = pool[i + 1];
      if (p.slope == q.slope) {
        next.push_back(p.intercept >= q.intercept ? p : q);
        continue;
      }
      if (p.slope > q.slope) std::swap(p, q);
      const double u = (p.intercept - q.intercept) / (q.slope - p.slope);
      if (u <= lo)
        next.push_back(q);
      else if (u >= hi)
        next.push_back(p);
      else
        open.push_back({p, q, u});
    }
    if (pool.size() % 2 == 1) next.push_back(pool.back());
    if (open.empty()) {
      pool.swap(next);
      continue;
    }

    crosses.clear();
    for (const auto& op : open) crosses.push_back(op.cross);
    const double um = median_select_inplace(crosses);

    double fmax = -kInf;
    auto scan = [&](const Line1D& l) { fmax = std::max(fmax, l(um)); };
    for (const auto& l : next) scan(l);
    for (const auto& op : open) {
      scan(op.low_slope);
      scan(op.high_slope);
    }
    const double tol = 1e-12 * std::max(1.0, std::abs(fmax));
    double smin = kInf;
    double smax = -kInf;
    auto slopes = [&](const Line1D& l) {
      if (l(um) >= fmax - tol) {
        smin = std::min(smin, l.slope);
        smax = std::max(smax, l.slope);
      }
    };
    for (const auto& l : next) slopes(l);
    for (const auto& op : open) {
      slopes(op.low_slope);
      slopes(op.high_slope);
    }
    if (smin <= 0.0 && smax >= 0.0) return {um, fmax};

    if (smin > 0.0) {
      // Optimum lies left of um; left of a crossing the smaller slope wins.
      hi = um;
      for (const auto& op : open) {
        next.push_back(op.low_slope);
        if (op.cross < um) next.push_back(op.high_slope);
      }
    } else {
      lo = um;
      for (const auto& op : open) {
        next.push_back(op.high_slope);
        if (op.cross > um) next.push_back(op.low_slope);
      }
    }
    pool.swap(next);
  }
  return brute_force_min(pool, lo, hi);
}

SegmentMin min_envelope_on_segment(std::span<const Plane> planes, const Segment& seg,
                                   double rel_tol) {
  if (planes.empty()) throw std::invalid_argument("empty plane list");
  if (!(seg.tmin <= seg.tmax)) throw std::invalid_argument("segment parameters out of order");
  const Point2 start = seg.line.at(seg.tmin);
  const Point2 dir = seg.line.direction();
  const double length = seg.tmax - seg.tmin;

  SegmentMin out;
  double s = 0.0;
  if (length > 0.0) {
    std::vector<Line1D> lines;
    lines.reserve(planes.size());
    for (const Plane& h : planes)
      lines.push_back({h(start), h.alpha * dir.x + h.beta * dir.y});
    s = minimize_max_of_lines(lines, 0.0, length).t;
  }
  out.t = seg.tmin + s;
  out.point = {start.x + s * dir.x, start.y + s * dir.y};

  double value = -kInf;
  for (const Plane& h : planes) value = std::max(value, h(out.point));
  out.value = value;
  const double tol = rel_tol * std::max(1.0, std::abs(value));
  for (std::size_t k = 0; k < planes.size(); ++k)
    if (planes[k](out.point) >= value - tol) out.tight.push_back(k);
  return out;
}

Side descent_side(std::span<const Plane> tight, const LineSpec& line, Point2 /*q_prime*/,
                  const Cone* cone, double rel_tol) {
  if (tight.empty()) throw std::invalid_argument("empty tight set");
  constexpr double kAlongBound = 1e3;
  const Point2 n = line.normal();
  const Point2 e = line.direction();

  double gscale = 1.0;
  for (const Plane& h : tight) gscale = std::max(gscale, std::hypot(h.alpha, h.beta));

  // d = s*n + u*e; minimize max_h grad(h).d over the admissible u.
  auto best_rate = [&](double s) {
    double lo = -kAlongBound;
    double hi = kAlongBound;
    if (cone != nullptr) {
      for (const Point2& c : cone->normals) {
        const double coef = c.x * e.x + c.y * e.y;
        const double rhs = -s * (c.x * n.x + c.y * n.y);
        if (std::abs(coef) <= 1e-12) {
          if (rhs < -1e-12) return kInf;
          continue;
        }
        if (coef > 0.0)
          hi = std::min(hi, rhs / coef);
        else
          lo = std::max(lo, rhs / coef);
      }
    }
    if (lo > hi) return kInf;
    std::vector<Line1D> lines;
    lines.reserve(tight.size());
    for (const Plane& h : tight)
      lines.push_back({s * (h.alpha * n.x + h.beta * n.y), h.alpha * e.x + h.beta * e.y});
    return minimize_max_of_lines(lines, lo, hi).value;
  };

  const double tol = rel_tol * gscale;
  const bool positive = best_rate(1.0) < -tol;
  const bool negative = best_rate(-1.0) < -tol;
  if (positive && negative)
    throw InconsistentDecision("descent reported on both sides of the line");
  if (positive) return Side::PositiveSide;
  if (negative) return Side::NegativeSide;
  return Side::NoDescent;
}

namespace {

struct RawHalfPlane {
  double a;
  double b;
  double rhs;  // a*x + b*y <= rhs
};

// Minimizes c . p over the rectangle intersected with the half-planes.
Point2 solve_2d(Point2 c, std::vector<RawHalfPlane>& cons, const Rect& rect, double scale,
                std::mt19937_64& rng) {
  Point2 p{c.x > 0.0 ? rect.x1 : rect.x2, c.y > 0.0 ? rect.y1 : rect.y2};
  if (c.x == 0.0) p.x = rect.x1;
  if (c.y == 0.0) p.y = rect.y1;
  std::shuffle(cons.begin(), cons.end(), rng);

  for (std::size_t k = 0; k < cons.size(); ++k) {
    const RawHalfPlane& h = cons[k];
    const double norm = std::hypot(h.a, h.b);
    if (norm <= 1e-14 * (1.0 + std::abs(h.rhs))) continue;
    const double viol = (h.a * p.x + h.b * p.y - h.rhs) / norm;
    if (viol <= 1e-12 * scale) continue;

    const double na = h.a / norm;
    const double nb = h.b / norm;
    const double nr = h.rhs / norm;
    const Point2 anchor{na * nr, nb * nr};
    const Point2 dir{-nb, na};
    double lo = -kInf;
    double hi = kInf;
    auto restrict = [&](double slope, double rhs) {
      if (std::abs(slope) <= 1e-15) return;
      const double t = rhs / slope;
      if (slope > 0.0)
        hi = std::min(hi, t);
      else
        lo = std::max(lo, t);
    };
    restrict(-dir.x, anchor.x - rect.x1);
    restrict(dir.x, rect.x2 - anchor.x);
    restrict(-dir.y, anchor.y - rect.y1);
    restrict(dir.y, rect.y2 - anchor.y);
    for (std::size_t j = 0; j < k; ++j) {
      const RawHalfPlane& g = cons[j];
      restrict(g.a * dir.x + g.b * dir.y, g.rhs - (g.a * anchor.x + g.b * anchor.y));
    }
    const double slope = c.x * dir.x + c.y * dir.y;
    double t;
    if (lo > hi)
      t = 0.5 * (lo + hi);
    else if (slope > 0.0)
      t = lo;
    else if (slope < 0.0)
      t = hi;
    else
      t = std::isfinite(lo) ? lo : hi;
    p = {anchor.x + t * dir.x, anchor.y + t * dir.y};
  }
  return p;
}

}  // namespace

RegionMin min_envelope_over_region(std::span<const Plane> planes, const Rect& rect,
                                   std::span<const HalfPlane> cuts, std::mt19937_64& rng) {
  if (planes.empty()) throw std::invalid_argument("empty plane list");
  if (!rect.bounded() || rect.x1 > rect.x2 || rect.y1 > rect.y2)
    throw std::invalid_argument("region rectangle must be bounded and ordered");

  const double scale = 1.0 + std::max({std::abs(rect.x1), std::abs(rect.x2), std::abs(rect.y1),
                                       std::abs(rect.y2)});
  std::vector<std::size_t> order(planes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<RawHalfPlane> cons;
  Point2 p;
  double z;
  {
    const Plane& h0 = planes[order[0]];
    cons.clear();
    for (const HalfPlane& cut : cuts) cons.push_back({cut.a, cut.b, cut.c});
    p = solve_2d({h0.alpha, h0.beta}, cons, rect, scale, rng);
    z = h0(p);
  }
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Plane& h = planes[order[i]];
    const double hp = h(p);
    if (hp <= z + 1e-12 * std::max(1.0, std::abs(z))) continue;
    cons.clear();
    for (const HalfPlane& cut : cuts) cons.push_back({cut.a, cut.b, cut.c});
    for (std::size_t j = 0; j < i; ++j) {
      const Plane& g = planes[order[j]];
      cons.push_back({g.alpha - h.alpha, g.beta - h.beta, h.gamma - g.gamma});
    }
    p = solve_2d({h.alpha, h.beta}, cons, rect, scale, rng);
    z = -kInf;
    for (std::size_t j = 0; j <= i; ++j) z = std::max(z, planes[order[j]](p));
  }
  double value = -kInf;
  for (const Plane& h : planes) value = std::max(value, h(p));
  return {p, value};
}

RegionMin min_envelope_over_rect(std::span<const Plane> planes, const Rect& rect,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return min_envelope_over_region(planes, rect, {}, rng);
}

double median_select_inplace(std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("median of an empty list");
  const std::size_t k = (values.size() + 1) / 2 - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
  return values[k];
}

double median_select(std::span<const double> values) {
  std::vector<double> copy(values.begin(), values.end());
  return median_select_inplace(copy);
}

}  // namespace rcenter
