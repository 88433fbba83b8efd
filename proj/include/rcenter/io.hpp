#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rcenter/model.hpp"
#include "rcenter/solver.hpp"

namespace rcenter {

/// Parses {"metric":"l1"|"linf","points":[{"weight":w,"locations":[{"x":..,"y":..,"p":..}]}]}.
/// Syntax errors are reported as ValidationError with line and column.
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);
std::string instance_to_json(const Instance& instance);

/// {"center":{"x":..,"y":..},"objective":..,"stats":{..}}
std::string solution_to_json(const Solution& solution);
std::string oracle_to_json(Point2 center, double objective, const std::string& method);
/// JSON array of trace events.
std::string trace_to_json(const std::vector<TraceEvent>& trace);

enum class Distribution { Uniform, Clustered };

/// Locations uniform in the unit square, or Gaussian blobs (sigma 0.05)
/// around a uniform per-point center; probabilities uniform then normalized.
/// Deterministic per seed on every platform.
Instance generate_instance(std::size_t n, std::size_t m, std::uint64_t seed,
                           Distribution distribution = Distribution::Uniform);

}  // namespace rcenter
