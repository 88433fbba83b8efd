#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rcenter/model.hpp"
#include "support.hpp"

using namespace rcenter;

namespace {

UncertainPoint two_location_point() { return {{{1.0, 1.0, 0.4}, {3.0, 2.0, 0.6}}, 1.0}; }

}  // namespace

TEST_CASE("build_prep on a two-location point") {
  const PointPrep p = build_prep(two_location_point());
  REQUIRE(p.m() == 2);
  CHECK(std::isinf(p.xs[0]));
  CHECK(p.xs[0] < 0);
  CHECK(p.xs[1] == 1.0);
  CHECK(p.xs[2] == 3.0);
  CHECK(p.ys[1] == 1.0);
  CHECK(p.ys[2] == 2.0);
  CHECK(p.ax[0] == 0.0);
  CHECK(p.ax[1] == doctest::Approx(0.4));
  CHECK(p.ax[2] == doctest::Approx(1.0));
  CHECK(p.bx[1] == doctest::Approx(0.4));
  CHECK(p.bx[2] == doctest::Approx(2.2));
  CHECK(p.ay[1] == doctest::Approx(0.4));
  CHECK(p.by[2] == doctest::Approx(1.6));
  CHECK(p.total_mass == doctest::Approx(1.0));
  CHECK(p.sum_fx == doctest::Approx(2.2));
  CHECK(p.sum_fy == doctest::Approx(1.6));
}

TEST_CASE("build_prep single location and zero mass") {
  const PointPrep one = build_prep({{{0.0, 0.0, 1.0}}, 1.0});
  CHECK(one.m() == 1);
  CHECK(one.ax[1] == 1.0);
  CHECK(one.bx[1] == 0.0);
  CHECK(one.total_mass == 1.0);
  CHECK(one.sum_fx == 0.0);

  const PointPrep zero = build_prep({{{0.0, 1.0, 0.0}, {2.0, 3.0, 0.0}}, 1.0});
  for (double a : zero.ax) CHECK(a == 0.0);
  CHECK(zero.total_mass == 0.0);
}

TEST_CASE("build_prep sorts unsorted input and keeps prefix totals exact") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    UncertainPoint pt;
    const std::size_t m = 1 + rng() % 20;
    for (std::size_t j = 0; j < m; ++j)
      pt.locations.push_back({rctest::uniform(rng, -5, 5), rctest::uniform(rng, -5, 5), rctest::uniform(rng, 0, 1)});
    const PointPrep p = build_prep(pt);
    for (std::size_t j = 1; j < m; ++j) {
      CHECK(p.xs[j] <= p.xs[j + 1]);
      CHECK(p.ys[j] <= p.ys[j + 1]);
      CHECK(p.ax[j] <= p.ax[j + 1]);
      CHECK(p.ay[j] <= p.ay[j + 1]);
    }
    CHECK(p.ax[m] == p.total_mass);
    CHECK(p.ay[m] == p.total_mass);
    CHECK(p.bx[m] == p.sum_fx);
    CHECK(p.by[m] == p.sum_fy);
  }
}

TEST_CASE("build_prep keeps ties in input order") {
  const PointPrep p = build_prep({{{2.0, 0.0, 0.1}, {1.0, 0.0, 0.2}, {2.0, 0.0, 0.3}}, 1.0});
  CHECK(p.xs[1] == 1.0);
  CHECK(p.xs[2] == 2.0);
  CHECK(p.xs[3] == 2.0);
  CHECK(p.ax[1] == doctest::Approx(0.2));
  CHECK(p.ax[2] == doctest::Approx(0.3));
}

TEST_CASE("validation names the offending location") {
  UncertainPoint bad{{{0.0, 0.0, 0.5}, {NAN, 1.0, 0.5}}, 1.0};
  try {
    validate_point(bad, 4);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.point_index() == 4);
    CHECK(e.location_index() == 1);
  }
  CHECK_THROWS_AS(build_prep({{{0.0, 0.0, -0.1}}, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate_point({{}, 1.0}), ValidationError);
  CHECK_THROWS_AS(validate_point({{{0.0, 0.0, 1.0}}, -1.0}), ValidationError);
  CHECK_THROWS_AS(normalize_instance(Instance{}), ValidationError);
}

TEST_CASE("predecessor_index") {
  const std::vector<double> v{-kInf, 1.0, 3.0};
  CHECK(predecessor_index(v, 2.0) == 1);
  CHECK(predecessor_index(v, 1.0) == 1);
  CHECK(predecessor_index(v, 0.5) == 0);
  CHECK(predecessor_index(v, 3.0) == 2);
  CHECK(predecessor_index(v, 9.0) == 2);
  const std::vector<double> ties{-kInf, 1.0, 1.0, 2.0};
  CHECK(predecessor_index(ties, 1.0) == 2);
}

TEST_CASE("predecessor_index agrees with a linear scan") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v{-kInf};
    const std::size_t m = 1 + rng() % 30;
    for (std::size_t j = 0; j < m; ++j) v.push_back(static_cast<double>(rng() % 10));
    std::sort(v.begin() + 1, v.end());
    for (int q = 0; q < 1000; ++q) {
      const double z = rctest::uniform(rng, -1, 11);
      std::size_t expect = 0;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] <= z) expect = j;
      CHECK(predecessor_index(v, z) == expect);
    }
  }
}

TEST_CASE("weight reduction") {
  Instance inst;
  inst.points.push_back({{{0.0, 0.0, 0.5}, {1.0, 0.0, 0.5}}, 2.0});
  inst.points.push_back({{{0.0, 0.0, 0.3}}, 1.0});
  inst.points.push_back({{{0.0, 0.0, 0.7}}, 0.0});
  const Instance r = apply_weight_reduction(inst);
  CHECK(r.points[0].locations[0].prob == 1.0);
  CHECK(r.points[0].locations[1].prob == 1.0);
  CHECK(r.points[0].weight == 1.0);
  CHECK(r.points[1].locations[0].prob == 0.3);
  CHECK(r.points[2].locations[0].prob == 0.0);
}

TEST_CASE("L-infinity frame") {
  Instance inst;
  inst.metric = Metric::Linf;
  inst.points.push_back({{{1.0, 0.0, 1.0}, {0.0, 1.0, 1.0}}, 1.0});
  const auto [l1, frame] = to_l1_frame(inst);
  CHECK(l1.metric == Metric::L1);
  CHECK(l1.points[0].locations[0].x == 1.0);
  CHECK(l1.points[0].locations[0].y == 1.0);
  CHECK(l1.points[0].locations[1].x == 1.0);
  CHECK(l1.points[0].locations[1].y == -1.0);
  CHECK(frame.objective_scale == 0.5);
  const Point2 back = frame.to_original({1.0, -1.0});
  CHECK(back.x == 0.0);
  CHECK(back.y == 1.0);

  Instance plain;
  plain.points.push_back({{{0.0, 0.0, 1.0}}, 1.0});
  CHECK_THROWS_AS(to_l1_frame(plain), std::invalid_argument);
}

TEST_CASE("L-infinity round trip is the identity up to rounding") {
  std::mt19937_64 rng(8);
  const FrameDescriptor frame{true, 0.5};
  for (int k = 0; k < 1000; ++k) {
    const Point2 p{rctest::uniform(rng, -100, 100), rctest::uniform(rng, -100, 100)};
    const Point2 back = frame.to_original({p.x + p.y, p.x - p.y});
    CHECK(std::abs(back.x - p.x) <= 4 * std::numeric_limits<double>::epsilon() * 200);
    CHECK(std::abs(back.y - p.y) <= 4 * std::numeric_limits<double>::epsilon() * 200);
  }
}

TEST_CASE("normalize pads short points with zero-probability copies") {
  Instance inst;
  inst.points.push_back({{{0.0, 0.0, 1.0}}, 1.0});
  inst.points.push_back({{{1.0, 1.0, 0.5}, {2.0, 2.0, 0.5}, {3.0, 3.0, 0.0}}, 1.0});
  const Instance n = normalize_instance(inst);
  REQUIRE(n.points[0].locations.size() == 3);
  CHECK(n.points[0].locations[2].prob == 0.0);
  CHECK(n.points[0].locations[2].x == 0.0);
  CHECK(n.locations_per_point() == 3);
}

TEST_CASE("probability lint and bounding box") {
  Instance inst;
  inst.points.push_back({{{0.0, 5.0, 0.5}, {2.0, -1.0, 0.5}}, 1.0});
  inst.points.push_back({{{-3.0, 0.0, 0.7}}, 1.0});
  const auto warnings = lint_probabilities(inst);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("point 1") != std::string::npos);
  const Rect box = bounding_box(inst);
  CHECK(box.x1 == -3.0);
  CHECK(box.x2 == 2.0);
  CHECK(box.y1 == -1.0);
  CHECK(box.y2 == 5.0);
}
