#include "rcenter/geometry.hpp"

#include <algorithm>

namespace rcenter {

namespace {

// Restricts [lo, hi] to {t : slope * t <= rhs}. Returns false when empty.
bool restrict(double slope, double rhs, double& lo, double& hi) {
  if (slope == 0.0) return rhs >= 0.0;
  const double t = rhs / slope;
  if (slope > 0.0)
    hi = std::min(hi, t);
  else
    lo = std::max(lo, t);
  return true;
}

}  // namespace

std::optional<std::pair<double, double>> clip_line(const LineSpec& line, const Rect& rect,
                                                   std::span<const HalfPlane> cuts) {
  const Point2 p0 = line.anchor();
  const Point2 d = line.direction();
  double lo = -kInf;
  double hi = kInf;
  bool ok = true;
  if (std::isfinite(rect.x1)) ok = ok && restrict(-d.x, p0.x - rect.x1, lo, hi);
  if (std::isfinite(rect.x2)) ok = ok && restrict(d.x, rect.x2 - p0.x, lo, hi);
  if (std::isfinite(rect.y1)) ok = ok && restrict(-d.y, p0.y - rect.y1, lo, hi);
  if (std::isfinite(rect.y2)) ok = ok && restrict(d.y, rect.y2 - p0.y, lo, hi);
  for (const HalfPlane& h : cuts) {
    ok = ok && restrict(h.a * d.x + h.b * d.y, h.slack(p0), lo, hi);
  }
  if (!ok || lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}


std::vector<Point2> clip_polygon(const Rect& rect, std::span<const HalfPlane> cuts) {
  std::vector<Point2> poly{{rect.x1, rect.y1}, {rect.x2, rect.y1}, {rect.x2, rect.y2}, {rect.x1, rect.y2}};
  std::vector<Point2> next;
  for (const HalfPlane& h : cuts) {
    next.clear();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point2 a = poly[i];
      const Point2 b = poly[(i + 1) % poly.size()];
      const double sa = h.slack(a);
      const double sb = h.slack(b);
      if (sa >= 0.0) next.push_back(a);
      if ((sa >= 0.0) != (sb >= 0.0)) {
        const double w = sa / (sa - sb);
        next.push_back({a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)});
      }
    }
    poly.swap(next);
    if (poly.empty()) break;
  }
  return poly;
}

}  // namespace rcenter
