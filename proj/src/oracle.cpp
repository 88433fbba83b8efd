#include "rcenter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace rcenter {

double ed_max_direct(const Instance& instance, Point2 q) {
  double best = 0.0;
  for (const UncertainPoint& p : instance.points) {
    double sum = 0.0;
    for (const Location& loc : p.locations) {
      const double dx = std::abs(loc.x - q.x);
      const double dy = std::abs(loc.y - q.y);
      sum += loc.prob * (instance.metric == Metric::L1 ? dx + dy : std::max(dx, dy));
    }
    best = std::max(best, p.weight * sum);
  }
  return best;
}

std::vector<Plane> enumerate_all_planes(const Instance& instance) {
  std::vector<Plane> out;
  for (std::size_t i = 0; i < instance.points.size(); ++i) {
    const PointPrep prep = build_prep(instance.points[i], static_cast<long>(i));
    for (std::size_t jx = 0; jx <= prep.m(); ++jx)
      for (std::size_t jy = 0; jy <= prep.m(); ++jy) out.push_back(plane_for_cell(prep, jx, jy, i));
  }
  return out;
}

namespace {

double envelope_at(std::span<const Plane> planes, Point2 q) {
  double v = -kInf;
  for (const Plane& h : planes) v = std::max(v, h(q));
  return v;
}

// Minimum of the envelope over a closed cell by trying every arrangement
// vertex inside it.
void search_cell(std::span<const Plane> planes, const Rect& cell, OracleResult& best) {
  const double slack = 1e-12 * (1.0 + std::max({std::abs(cell.x1), std::abs(cell.x2),
                                                std::abs(cell.y1), std::abs(cell.y2)}));
  auto consider = [&](Point2 q) {
    if (!cell.contains(q, slack)) return;
    q.x = std::clamp(q.x, cell.x1, cell.x2);
    q.y = std::clamp(q.y, cell.y1, cell.y2);
    const double v = envelope_at(planes, q);
    if (v < best.value) best = {q, v};
  };

  consider({cell.x1, cell.y1});
  consider({cell.x2, cell.y1});
  consider({cell.x1, cell.y2});
  consider({cell.x2, cell.y2});

  const std::size_t k = planes.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      // Where planes i and j meet: a x + b y = c.
      const double a = planes[i].alpha - planes[j].alpha;
      const double b = planes[i].beta - planes[j].beta;
      const double c = planes[j].gamma - planes[i].gamma;
      if (a != 0.0) {
        consider({(c - b * cell.y1) / a, cell.y1});
        consider({(c - b * cell.y2) / a, cell.y2});
      }
      if (b != 0.0) {
        consider({cell.x1, (c - a * cell.x1) / b});
        consider({cell.x2, (c - a * cell.x2) / b});
      }
      if (a == 0.0 && b == 0.0) continue;
      for (std::size_t l = j + 1; l < k; ++l) {
        const double a2 = planes[i].alpha - planes[l].alpha;
        const double b2 = planes[i].beta - planes[l].beta;
        const double c2 = planes[l].gamma - planes[i].gamma;
        const double det = a * b2 - b * a2;
        const double scale = std::max({1.0, std::abs(a), std::abs(b), std::abs(a2), std::abs(b2)});
        if (std::abs(det) <= 1e-12 * scale * scale) continue;
        consider({(c * b2 - b * c2) / det, (a * c2 - c * a2) / det});
      }
    }
  }
}

// Breakpoints of one axis: the sorted distinct coordinates.
std::vector<double> axis_breaks(const std::vector<PointPrep>& preps, bool use_x) {
  std::vector<double> out;
  for (const PointPrep& p : preps) {
    const auto& v = use_x ? p.xs : p.ys;
    out.insert(out.end(), v.begin() + 1, v.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Slabs between consecutive breakpoints; a single zero-width slab when the
// axis has one value.
std::vector<std::pair<double, double>> slabs(const std::vector<double>& breaks) {
  std::vector<std::pair<double, double>> out;
  if (breaks.size() == 1) out.emplace_back(breaks[0], breaks[0]);
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) out.emplace_back(breaks[k], breaks[k + 1]);
  return out;
}

}  // namespace

OracleResult oracle_center(const Instance& instance) {
  const Instance original = normalize_instance(instance);
  const std::size_t n = original.points.size();
  const std::size_t m = original.locations_per_point();
  if (n * (m + 1) * (m + 1) > kOracleMaxPlanes)
    throw SizeGuardError("instance too large for the exhaustive oracle: n*(m+1)^2 = " +
                         std::to_string(n * (m + 1) * (m + 1)) + " > " +
                         std::to_string(kOracleMaxPlanes));

  Instance work = apply_weight_reduction(original);
  FrameDescriptor frame;
  if (work.metric == Metric::Linf) {
    auto converted = to_l1_frame(work);
    work = std::move(converted.first);
    frame = converted.second;
  }
  std::vector<PointPrep> preps;
  for (std::size_t i = 0; i < n; ++i) preps.push_back(build_prep(work.points[i], static_cast<long>(i)));

  const auto cols = slabs(axis_breaks(preps, true));
  const auto rows = slabs(axis_breaks(preps, false));
  // Column-wise predecessor index of every point, and likewise for rows.
  std::vector<std::vector<std::size_t>> jx(n), jy(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [lo, hi] : cols) jx[i].push_back(predecessor_index(preps[i].xs, 0.5 * (lo + hi)));
    for (const auto& [lo, hi] : rows) jy[i].push_back(predecessor_index(preps[i].ys, 0.5 * (lo + hi)));
  }

  OracleResult best{{cols.front().first, rows.front().first}, kInf};
  std::vector<Plane> planes(n);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rect cell{cols[c].first, cols[c].second, rows[r].first, rows[r].second};
      double lower = -kInf;
      for (std::size_t i = 0; i < n; ++i) {
        planes[i] = plane_for_cell(preps[i], jx[i][c], jy[i][r], i);
        const Plane& h = planes[i];
        lower = std::max(lower, std::min({h(cell.x1, cell.y1), h(cell.x2, cell.y1),
                                          h(cell.x1, cell.y2), h(cell.x2, cell.y2)}));
      }
      if (lower >= best.value) continue;
      search_cell(planes, cell, best);
    }
  }
  const Point2 center = frame.to_original(best.center);
  return {center, ed_max_direct(original, center)};
}

namespace {

// Argmin of a convex function on [lo, hi], stopping at the given width.
double golden_section(const std::function<double(double)>& f, double lo, double hi, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > width) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double mid = 0.5 * (lo + hi);
  const double fm = f(mid);
  if (fm <= fc && fm <= fd) return mid;
  return fc <= fd ? c : d;
}

}  // namespace

OracleResult oracle_center_approx(const Instance& instance, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const Instance original = normalize_instance(instance);
  const Rect box = bounding_box(original);
  double lip = 0.0;
  for (const UncertainPoint& p : original.points) {
    double mass = 0.0;
    for (const Location& loc : p.locations) mass += loc.prob;
    lip = std::max(lip, p.weight * mass);
  }
  if (!(lip > 0.0)) {
    const Point2 q{0.5 * (box.x1 + box.x2), 0.5 * (box.y1 + box.y2)};
    return {q, ed_max_direct(original, q)};
  }
  const double width = tol / (4.0 * lip);
  auto best_y = [&](double x) {
    return golden_section([&](double y) { return ed_max_direct(original, {x, y}); }, box.y1,
                          box.y2, width);
  };
  const double x = golden_section([&](double xv) { return ed_max_direct(original, {xv, best_y(xv)}); },
                                  box.x1, box.x2, width);
  const Point2 q{x, best_y(x)};
  return {q, ed_max_direct(original, q)};
}

OracleResult brute_force_lowest_point(std::span<const Plane> planes, const Rect& rect) {
  if (planes.empty()) throw std::invalid_argument("no planes");
  if (!rect.bounded()) throw std::invalid_argument("rectangle must be bounded");
  OracleResult best{{rect.x1, rect.y1}, kInf};
  search_cell(planes, rect, best);
  return best;
}

}  // namespace rcenter
