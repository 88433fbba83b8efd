#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "rcenter/envelope.hpp"
#include "rcenter/geometry.hpp"

namespace rcenter {

/// z = intercept + slope * t.
struct Line1D {
  double intercept = 0.0;
  double slope = 0.0;

  double operator()(double t) const { return intercept + slope * t; }
};

struct Min1D {
  double t = 0.0;
  double value = 0.0;
};

/// Minimizes max_k lines[k](t) over the finite interval [lo, hi] by pairwise
/// pruning around median breakpoints. Linear time.
Min1D minimize_max_of_lines(std::span<const Line1D> lines, double lo, double hi);

struct Segment {
  LineSpec line;
  double tmin = 0.0;
  double tmax = 0.0;
};

struct SegmentMin {
  Point2 point;
  double t = 0.0;
  double value = 0.0;
  std::vector<std::size_t> tight;  // indices into the plane list
};

/// Lowest point of the upper envelope of the planes along a bounded segment,
/// with the planes within 1e-9 * max(1, |value|) of the maximum there.
SegmentMin min_envelope_on_segment(std::span<const Plane> planes, const Segment& seg,
                                   double rel_tol = 1e-9);

enum class Side { NoDescent, PositiveSide, NegativeSide };

/// Admissible directions d at a point: c . d <= 0 for every stored normal c.
struct Cone {
  std::vector<Point2> normals;
};

/// Thrown when numerical trouble makes both sides of a line look like
/// descent sides.
class InconsistentDecision : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which side of `line` (if any) offers a descent direction for the envelope
/// of the tight planes at q_prime, restricted to the cone when given.
Side descent_side(std::span<const Plane> tight, const LineSpec& line, Point2 q_prime,
                  const Cone* cone = nullptr, double rel_tol = 1e-9);

struct RegionMin {
  Point2 point;
  double value = 0.0;
};

/// Lowest point of the upper envelope of the planes over a bounded rectangle
/// intersected with optional half-planes. Seidel-style randomized incremental
/// LP; reproducible for a given generator state.
RegionMin min_envelope_over_region(std::span<const Plane> planes, const Rect& rect,
                                   std::span<const HalfPlane> cuts, std::mt19937_64& rng);

RegionMin min_envelope_over_rect(std::span<const Plane> planes, const Rect& rect,
                                 std::uint64_t seed = 0);

/// Lower median: the ceil(n/2)-th smallest value. Expected linear time.
double median_select(std::span<const double> values);
/// In-place variant that reorders the buffer.
double median_select_inplace(std::vector<double>& values);

}  // namespace rcenter
