#include "rcenter/envelope.hpp"

#include <stdexcept>

namespace rcenter {

Plane plane_for_cell(const PointPrep& prep, std::size_t jx, std::size_t jy, std::size_t owner) {
  const std::size_t m = prep.m();
  if (jx > m || jy > m) throw std::out_of_range("cell index out of range");
  Plane h;
  h.alpha = 2.0 * prep.ax[jx] - prep.total_mass;
  h.beta = 2.0 * prep.ay[jy] - prep.total_mass;
  h.gamma = (prep.sum_fx - 2.0 * prep.bx[jx]) + (prep.sum_fy - 2.0 * prep.by[jy]);
  h.owner = owner;
  h.jx = jx;
  h.jy = jy;
  return h;
}

double expected_distance(const PointPrep& prep, Point2 q) {
  const std::size_t jx = predecessor_index(prep.xs, q.x);
  const std::size_t jy = predecessor_index(prep.ys, q.y);
  return plane_for_cell(prep, jx, jy)(q);
}

EdMax ed_max(std::span<const PointPrep> preps, Point2 q) {
  EdMax best{-kInf, 0};
  for (std::size_t i = 0; i < preps.size(); ++i) {
    const double v = expected_distance(preps[i], q);
    if (v > best.value) best = {v, i};
  }
  return best;
}

EdMax ed_max(std::span<const PointPrep> preps, std::span<const std::size_t> subset, Point2 q) {
  EdMax best{-kInf, 0};
  for (std::size_t i : subset) {
    const double v = expected_distance(preps[i], q);
    if (v > best.value) best = {v, i};
  }
  return best;
}

std::vector<PointPrep> build_preps(const Instance& instance) {
  std::vector<PointPrep> preps;
  preps.reserve(instance.points.size());
  for (std::size_t i = 0; i < instance.points.size(); ++i)
    preps.push_back(build_prep(instance.points[i], static_cast<long>(i)));
  return preps;
}

}  // namespace rcenter
