#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "rcenter/envelope.hpp"
#include "rcenter/geometry.hpp"
#include "rcenter/model.hpp"

namespace rcenter {

/// Raised when an input exceeds the exhaustive oracle's size limit.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Largest n * (m+1)^2 accepted by oracle_center.
inline constexpr std::size_t kOracleMaxPlanes = 600;

/// Max weighted expected distance by plain summation over every location,
/// in the instance's own metric.
double ed_max_direct(const Instance& instance, Point2 q);

/// Every cell plane of every point: n * (m+1)^2 planes. Uses the instance's
/// coordinates as given (no metric transform).
std::vector<Plane> enumerate_all_planes(const Instance& instance);

struct OracleResult {
  Point2 center;
  double value = 0.0;
};

/// Exact center by exhaustive candidate search over the cells of the overlay
/// of all grids. Throws SizeGuardError above kOracleMaxPlanes.
OracleResult oracle_center(const Instance& instance);

/// Nested golden-section search over the bounding box; the value is within
/// tol of the optimum.
OracleResult oracle_center_approx(const Instance& instance, double tol = 1e-6);

/// Lowest point of the upper envelope of the planes over a bounded rectangle,
/// by trying every vertex of the arrangement inside it. Cubic.
OracleResult brute_force_lowest_point(std::span<const Plane> planes, const Rect& rect);

}  // namespace rcenter
