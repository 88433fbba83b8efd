#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "rcenter/io.hpp"
#include "rcenter/model.hpp"

namespace rctest {

inline std::string data_path(const std::string& name) { return std::string(RCENTER_TEST_DATA) + "/" + name; }

inline rcenter::Instance deterministic(std::initializer_list<rcenter::Point2> pts) {
  rcenter::Instance inst;
  for (const rcenter::Point2& p : pts) inst.points.push_back({{{p.x, p.y, 1.0}}, 1.0});
  return inst;
}

// Random sizes in [1, max_n] x [1, max_m], alternating distributions.
inline rcenter::Instance random_instance(std::mt19937_64& rng, std::size_t min_n, std::size_t max_n,
                                         std::size_t min_m, std::size_t max_m) {
  const std::size_t n = min_n + rng() % (max_n - min_n + 1);
  const std::size_t m = min_m + rng() % (max_m - min_m + 1);
  const auto dist = rng() % 2 == 0 ? rcenter::Distribution::Uniform : rcenter::Distribution::Clustered;
  return rcenter::generate_instance(n, m, rng(), dist);
}

// Integer coordinates in [0, 3]: many ties and shared grid lines.
inline rcenter::Instance grid_instance(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  rcenter::Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    rcenter::UncertainPoint p;
    for (std::size_t j = 0; j < m; ++j)
      p.locations.push_back({static_cast<double>(rng() % 4), static_cast<double>(rng() % 4),
                             1.0 + static_cast<double>(rng() % 3)});
    inst.points.push_back(p);
  }
  return inst;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace rctest
