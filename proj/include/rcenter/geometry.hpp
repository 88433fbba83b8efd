#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rcenter {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Axis-parallel rectangle [x1,x2] x [y1,y2]. Edges may be infinite.
struct Rect {
  double x1 = -kInf;
  double x2 = kInf;
  double y1 = -kInf;
  double y2 = kInf;

  bool bounded() const {
    return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(y1) &&
           std::isfinite(y2);
  }
  bool contains(Point2 p, double slack = 0.0) const {
    return p.x >= x1 - slack && p.x <= x2 + slack && p.y >= y1 - slack &&
           p.y <= y2 + slack;
  }
};

/// Half-plane a*x + b*y <= c with (a,b) a unit vector.
struct HalfPlane {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static HalfPlane make(double a, double b, double c) {
    const double len = std::hypot(a, b);
    if (!(len > 0.0)) throw std::invalid_argument("half-plane with zero normal");
    return {a / len, b / len, c / len};
  }
  double slack(Point2 p) const { return c - (a * p.x + b * p.y); }
};

/// Line a*x + b*y = c, stored with a^2 + b^2 = 1. The positive side is
/// {a*x + b*y > c}.
class LineSpec {
 public:
  LineSpec(double a, double b, double c) {
    const double len = std::hypot(a, b);
    if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(c))
      throw std::invalid_argument("line needs a finite nonzero normal");
    a_ = a / len;
    b_ = b / len;
    c_ = c / len;
  }

  static LineSpec vertical(double x) { return {1.0, 0.0, x}; }
  static LineSpec horizontal(double y) { return {0.0, 1.0, y}; }

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

  /// Signed offset of p from the line; positive on the positive side.
  double offset(Point2 p) const { return a_ * p.x + b_ * p.y - c_; }

  /// Unit direction along the line: x-component positive, or +y when vertical.
  Point2 direction() const {
    Point2 d{b_, -a_};
    if (d.x < 0.0 || (d.x == 0.0 && d.y < 0.0)) d = {-d.x, -d.y};
    return d;
  }
  Point2 normal() const { return {a_, b_}; }
  /// Foot of the perpendicular from the origin.
  Point2 anchor() const { return {a_ * c_, b_ * c_}; }
  Point2 at(double t) const {
    const Point2 p = anchor();
    const Point2 d = direction();
    return {p.x + t * d.x, p.y + t * d.y};
  }

 private:
  double a_ = 1.0;
  double b_ = 0.0;
  double c_ = 0.0;
};

/// Parameter interval of the line inside the closed rectangle intersected with
/// the half-planes. Empty when the line misses the region.
std::optional<std::pair<double, double>> clip_line(const LineSpec& line, const Rect& rect,
                                                   std::span<const HalfPlane> cuts = {});

/// Vertices of the bounded rectangle cut by the half-planes (counter-clockwise,
/// possibly empty).
std::vector<Point2> clip_polygon(const Rect& rect, std::span<const HalfPlane> cuts);

}  // namespace rcenter
