#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcenter/geometry.hpp"

namespace rcenter {

struct Location {
  double x = 0.0;
  double y = 0.0;
  double prob = 0.0;
};

struct UncertainPoint {
  std::vector<Location> locations;
  double weight = 1.0;
};

enum class Metric { L1, Linf };

struct Instance {
  std::vector<UncertainPoint> points;
  Metric metric = Metric::L1;

  std::size_t size() const { return points.size(); }
  /// Locations per point (after normalize_instance all points agree).
  std::size_t locations_per_point() const;
};

/// Raised on malformed input. Indices are -1 when not applicable.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(const std::string& what, long point_index = -1, long location_index = -1)
      : std::invalid_argument(what), point_index_(point_index), location_index_(location_index) {}

  long point_index() const { return point_index_; }
  long location_index() const { return location_index_; }

 private:
  long point_index_;
  long location_index_;
};

/// Per-point preprocessing: sorted coordinate lists with a leading -inf
/// sentinel and the prefix sums that give any cell's plane in O(1).
struct PointPrep {
  std::vector<double> xs;  // m+1 entries, xs[0] = -inf
  std::vector<double> ys;
  std::vector<double> ax;  // ax[j] = sum of probs of the j smallest x
  std::vector<double> bx;  // bx[j] = sum of prob * x over the same prefix
  std::vector<double> ay;
  std::vector<double> by;
  double total_mass = 0.0;
  double sum_fx = 0.0;
  double sum_fy = 0.0;

  std::size_t m() const { return xs.size() - 1; }
};

/// Checks coordinates and probabilities of one point. Throws ValidationError
/// naming the offending location.
void validate_point(const UncertainPoint& point, long point_index = -1);

/// Builds the sorted lists and prefix arrays. Sorting is skipped when the
/// input order is already ascending; ties keep input order.
PointPrep build_prep(const UncertainPoint& point, long point_index = -1);

/// Largest j with sorted_values[j] <= z. sorted_values[0] must be -inf.
std::size_t predecessor_index(const std::vector<double>& sorted_values, double z);

/// Validates every point and pads short points with zero-probability copies
/// of their last location so that all share the same m.
Instance normalize_instance(Instance instance);

/// Folds each point's weight into its probabilities; all weights become 1.
Instance apply_weight_reduction(Instance instance);

struct FrameDescriptor {
  bool rotated = false;  // true when coordinates are (x+y, x-y)
  double objective_scale = 1.0;

  Point2 to_original(Point2 p) const;
};

/// Maps an L-infinity instance to an equivalent L1 instance via
/// (x, y) -> (x + y, x - y). Objectives of the result are twice the original.
std::pair<Instance, FrameDescriptor> to_l1_frame(const Instance& instance);

/// Warnings for points whose probabilities do not sum to 1 within 1e-6.
std::vector<std::string> lint_probabilities(const Instance& instance);

/// Smallest axis-parallel box containing every location.
Rect bounding_box(const Instance& instance);

}  // namespace rcenter
