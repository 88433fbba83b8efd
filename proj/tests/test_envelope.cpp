#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "rcenter/envelope.hpp"
#include "rcenter/oracle.hpp"
#include "support.hpp"

using namespace rcenter;

namespace {

PointPrep two_location_prep() { return build_prep({{{1.0, 1.0, 0.4}, {3.0, 2.0, 0.6}}, 1.0}); }

PointPrep unit_prep() { return build_prep({{{0.0, 0.0, 1.0}}, 1.0}); }

double direct(const UncertainPoint& p, Point2 q) {
  Instance one;
  one.points.push_back(p);
  return ed_max_direct(one, q);
}

}  // namespace

TEST_CASE("plane_for_cell examples") {
  const Plane h = plane_for_cell(two_location_prep(), 1, 1);
  CHECK(h.alpha == doctest::Approx(-0.2));
  CHECK(h.beta == doctest::Approx(-0.2));
  CHECK(h.gamma == doctest::Approx(2.2));
  CHECK(h(1.0, 1.0) == doctest::Approx(1.8));

  const Plane low = plane_for_cell(unit_prep(), 0, 0);
  CHECK(low.alpha == -1.0);
  CHECK(low.beta == -1.0);
  CHECK(low.gamma == 0.0);
  const Plane high = plane_for_cell(unit_prep(), 1, 1);
  CHECK(high.alpha == 1.0);
  CHECK(high.beta == 1.0);
  CHECK(high.gamma == 0.0);

  CHECK_THROWS_AS(plane_for_cell(unit_prep(), 2, 0), std::out_of_range);
}

TEST_CASE("expected_distance examples") {
  const PointPrep p = two_location_prep();
  CHECK(expected_distance(p, {1.0, 1.0}) == doctest::Approx(1.8));
  CHECK(expected_distance(p, {0.0, 0.0}) == doctest::Approx(3.8));
  CHECK(expected_distance(unit_prep(), {0.0, 0.0}) == 0.0);
}

TEST_CASE("ed_max examples") {
  const std::vector<PointPrep> preps{build_prep({{{0.0, 0.0, 1.0}}, 1.0}), build_prep({{{10.0, 0.0, 1.0}}, 1.0})};
  CHECK(ed_max(preps, {5.0, 0.0}).value == 5.0);
  const EdMax far = ed_max(preps, {0.0, 0.0});
  CHECK(far.value == 10.0);
  CHECK(far.index == 1);
  const std::vector<std::size_t> only_first{0};
  CHECK(ed_max(preps, only_first, {0.0, 0.0}).value == 0.0);
  const std::vector<PointPrep> single{two_location_prep()};
  CHECK(ed_max(single, {2.0, 7.0}).value == expected_distance(single[0], {2.0, 7.0}));
}

TEST_CASE("cell planes match direct summation inside their cells") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    UncertainPoint pt;
    const std::size_t m = 1 + rng() % 8;
    for (std::size_t j = 0; j < m; ++j)
      pt.locations.push_back({rctest::uniform(rng, -3, 3), rctest::uniform(rng, -3, 3), rctest::uniform(rng, 0, 1)});
    const PointPrep p = build_prep(pt);
    for (int k = 0; k < 100; ++k) {
      const std::size_t jx = rng() % (m + 1);
      const std::size_t jy = rng() % (m + 1);
      // A point inside the half-open cell [xs[jx], xs[jx+1]) x [ys[jy], ys[jy+1]).
      const double xlo = jx == 0 ? p.xs[1] - 2.0 : p.xs[jx];
      const double xhi = jx == m ? p.xs[m] + 2.0 : p.xs[jx + 1];
      const double ylo = jy == 0 ? p.ys[1] - 2.0 : p.ys[jy];
      const double yhi = jy == m ? p.ys[m] + 2.0 : p.ys[jy + 1];
      if (!(xlo < xhi && ylo < yhi)) continue;
      const Point2 q{rctest::uniform(rng, xlo, xhi), rctest::uniform(rng, ylo, yhi)};
      const double expect = direct(pt, q);
      CHECK(plane_for_cell(p, jx, jy)(q) == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("convexity, monotone gradients and support") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    UncertainPoint pt;
    const std::size_t m = 1 + rng() % 10;
    for (std::size_t j = 0; j < m; ++j)
      pt.locations.push_back({rctest::uniform(rng, -3, 3), rctest::uniform(rng, -3, 3), rctest::uniform(rng, 0, 1)});
    const PointPrep p = build_prep(pt);
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(plane_for_cell(p, j, 0).alpha <= plane_for_cell(p, j + 1, 0).alpha);
      CHECK(plane_for_cell(p, 0, j).beta <= plane_for_cell(p, 0, j + 1).beta);
    }
    for (int k = 0; k < 500; ++k) {
      const Point2 a{rctest::uniform(rng, -5, 5), rctest::uniform(rng, -5, 5)};
      const Point2 b{rctest::uniform(rng, -5, 5), rctest::uniform(rng, -5, 5)};
      const Point2 mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
      const double scale = 1.0 + expected_distance(p, a) + expected_distance(p, b);
      CHECK(expected_distance(p, mid) <= 0.5 * (expected_distance(p, a) + expected_distance(p, b)) + 1e-9 * scale);
      const Plane h = plane_for_cell(p, rng() % (m + 1), rng() % (m + 1));
      CHECK(h(a) <= expected_distance(p, a) + 1e-9 * scale);
    }
  }
}

TEST_CASE("ed_max equals direct summation on random instances") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = rctest::random_instance(rng, 1, 30, 1, 8);
    const auto preps = build_preps(inst);
    for (int k = 0; k < 1000; ++k) {
      const Point2 q{rctest::uniform(rng, -0.5, 1.5), rctest::uniform(rng, -0.5, 1.5)};
      CHECK(ed_max(preps, q).value == doctest::Approx(ed_max_direct(inst, q)).epsilon(1e-9));
    }
  }
}
