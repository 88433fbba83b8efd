#include "rcenter/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rcenter {

std::size_t Instance::locations_per_point() const {
  std::size_t m = 0;
  for (const auto& p : points) m = std::max(m, p.locations.size());
  return m;
}

void validate_point(const UncertainPoint& point, long point_index) {
  if (point.locations.empty())
    throw ValidationError("uncertain point has no locations", point_index);
  if (!std::isfinite(point.weight) || point.weight < 0.0)
    throw ValidationError("weight must be finite and nonnegative", point_index);
  for (std::size_t j = 0; j < point.locations.size(); ++j) {
    const Location& loc = point.locations[j];
    if (!std::isfinite(loc.x) || !std::isfinite(loc.y)) {
      std::ostringstream os;
      os << "non-finite coordinate at point " << point_index << ", location " << j;
      throw ValidationError(os.str(), point_index, static_cast<long>(j));
    }
    if (!std::isfinite(loc.prob) || loc.prob < 0.0) {
      std::ostringstream os;
      os << "negative or non-finite probability at point " << point_index << ", location " << j;
      throw ValidationError(os.str(), point_index, static_cast<long>(j));
    }
  }
}

namespace {

// Permutation sorting the locations by one coordinate; identity when the
// input is already ascending.
template <typename Key>
std::vector<std::size_t> sorted_order(const std::vector<Location>& locs, Key key) {
  std::vector<std::size_t> order(locs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const bool ascending = std::is_sorted(locs.begin(), locs.end(), [&](const Location& a, const Location& b) {
    return key(a) < key(b);
  });
  if (!ascending) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key(locs[a]) < key(locs[b]); });
  }
  return order;
}

template <typename Key>
void fill_axis(const std::vector<Location>& locs, Key key, std::vector<double>& values,
               std::vector<double>& mass, std::vector<double>& moment) {
  const auto order = sorted_order(locs, key);
  const std::size_t m = locs.size();
  values.assign(m + 1, -kInf);
  mass.assign(m + 1, 0.0);
  moment.assign(m + 1, 0.0);
  for (std::size_t j = 1; j <= m; ++j) {
    const Location& loc = locs[order[j - 1]];
    values[j] = key(loc);
    mass[j] = mass[j - 1] + loc.prob;
    moment[j] = moment[j - 1] + loc.prob * key(loc);
  }
}

}  // namespace

PointPrep build_prep(const UncertainPoint& point, long point_index) {
  validate_point(point, point_index);
  PointPrep prep;
  const auto& locs = point.locations;
  fill_axis(locs, [](const Location& l) { return l.x; }, prep.xs, prep.ax, prep.bx);
  fill_axis(locs, [](const Location& l) { return l.y; }, prep.ys, prep.ay, prep.by);
  // Totals reuse the prefix end so that ax[m] == total_mass holds exactly.
  const std::size_t m = locs.size();
  prep.total_mass = prep.ax[m];
  prep.sum_fx = prep.bx[m];
  prep.sum_fy = prep.by[m];
  // The y order sums the same masses differently; pin the end to the x total.
  prep.ay[m] = prep.total_mass;
  for (std::size_t j = m; j-- > 1;) prep.ay[j] = std::min(prep.ay[j], prep.ay[j + 1]);
  return prep;
}

std::size_t predecessor_index(const std::vector<double>& sorted_values, double z) {
  // upper_bound finds the first value > z; index 0 (-inf) always qualifies.
  auto it = std::upper_bound(sorted_values.begin() + 1, sorted_values.end(), z);
  return static_cast<std::size_t>(it - sorted_values.begin()) - 1;
}

Instance normalize_instance(Instance instance) {
  if (instance.points.empty()) throw ValidationError("instance has no points");
  for (std::size_t i = 0; i < instance.points.size(); ++i)
    validate_point(instance.points[i], static_cast<long>(i));
  const std::size_t m = instance.locations_per_point();
  for (auto& p : instance.points) {
    if (p.locations.size() < m) {
      Location pad = p.locations.back();
      pad.prob = 0.0;
      p.locations.resize(m, pad);
    }
  }
  return instance;
}

Instance apply_weight_reduction(Instance instance) {
  for (auto& p : instance.points) {
    for (auto& loc : p.locations) loc.prob = p.weight * loc.prob;
    p.weight = 1.0;
  }
  return instance;
}

Point2 FrameDescriptor::to_original(Point2 p) const {
  if (!rotated) return p;
  return {(p.x + p.y) / 2.0, (p.x - p.y) / 2.0};
}

std::pair<Instance, FrameDescriptor> to_l1_frame(const Instance& instance) {
  if (instance.metric != Metric::Linf)
    throw std::invalid_argument("to_l1_frame expects an L-infinity instance");
  Instance out = instance;
  out.metric = Metric::L1;
  for (auto& p : out.points) {
    for (auto& loc : p.locations) {
      const double u = loc.x + loc.y;
      const double v = loc.x - loc.y;
      loc.x = u;
      loc.y = v;
    }
  }
  return {std::move(out), FrameDescriptor{true, 0.5}};
}

std::vector<std::string> lint_probabilities(const Instance& instance) {
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < instance.points.size(); ++i) {
    double sum = 0.0;
    for (const auto& loc : instance.points[i].locations) sum += loc.prob;
    if (std::abs(sum - 1.0) > 1e-6) {
      std::ostringstream os;
      os << "point " << i << ": probabilities sum to " << sum << ", not 1";
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

Rect bounding_box(const Instance& instance) {
  Rect box{kInf, -kInf, kInf, -kInf};
  for (const auto& p : instance.points) {
    for (const auto& loc : p.locations) {
      box.x1 = std::min(box.x1, loc.x);
      box.x2 = std::max(box.x2, loc.x);
      box.y1 = std::min(box.y1, loc.y);
      box.y2 = std::max(box.y2, loc.y);
    }
  }
  return box;
}

}  // namespace rcenter
