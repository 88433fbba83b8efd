#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rcenter/geometry.hpp"
#include "rcenter/model.hpp"

namespace rcenter {

/// Affine function z = alpha*x + beta*y + gamma supporting one grid cell of a
/// point's expected-distance surface.
struct Plane {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t owner = 0;
  std::size_t jx = 0;
  std::size_t jy = 0;

  double operator()(double x, double y) const { return alpha * x + beta * y + gamma; }
  double operator()(Point2 p) const { return (*this)(p.x, p.y); }
};

/// Plane of the cell whose predecessor indices are (jx, jy). O(1).
Plane plane_for_cell(const PointPrep& prep, std::size_t jx, std::size_t jy, std::size_t owner = 0);

/// Expected rectilinear distance from q to the point. O(log m).
double expected_distance(const PointPrep& prep, Point2 q);

struct EdMax {
  double value = 0.0;
  std::size_t index = 0;
};

/// Maximum expected distance over all points and one index attaining it.
EdMax ed_max(std::span<const PointPrep> preps, Point2 q);

/// Same, restricted to the listed point indices.
EdMax ed_max(std::span<const PointPrep> preps, std::span<const std::size_t> subset, Point2 q);

std::vector<PointPrep> build_preps(const Instance& instance);

}  // namespace rcenter
