#include "rcenter/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "json.hpp"

namespace rcenter {

using nlohmann::json;

namespace {

std::string position_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

double number_field(const json& obj, const char* key, long point, long loc) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(std::string("missing field \"") + key + "\"", point, loc);
  if (!it->is_number()) throw ValidationError(std::string("field \"") + key + "\" must be a number", point, loc);
  return it->get<double>();
}

}  // namespace

Instance parse_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON at " + position_of(text, e.byte));
  }
  if (!doc.is_object()) throw ValidationError("instance must be a JSON object");

  Instance inst;
  if (const auto it = doc.find("metric"); it != doc.end()) {
    if (*it == "l1")
      inst.metric = Metric::L1;
    else if (*it == "linf")
      inst.metric = Metric::Linf;
    else
      throw ValidationError("metric must be \"l1\" or \"linf\"");
  }
  const auto pts = doc.find("points");
  if (pts == doc.end() || !pts->is_array()) throw ValidationError("\"points\" must be an array");
  for (std::size_t i = 0; i < pts->size(); ++i) {
    const json& jp = (*pts)[i];
    const long pi = static_cast<long>(i);
    if (!jp.is_object()) throw ValidationError("point must be an object", pi);
    UncertainPoint p;
    if (jp.contains("weight")) p.weight = number_field(jp, "weight", pi, -1);
    const auto locs = jp.find("locations");
    if (locs == jp.end() || !locs->is_array()) throw ValidationError("\"locations\" must be an array", pi);
    for (std::size_t j = 0; j < locs->size(); ++j) {
      const json& jl = (*locs)[j];
      const long lj = static_cast<long>(j);
      if (!jl.is_object()) throw ValidationError("location must be an object", pi, lj);
      p.locations.push_back({number_field(jl, "x", pi, lj), number_field(jl, "y", pi, lj),
                             number_field(jl, "p", pi, lj)});
    }
    inst.points.push_back(std::move(p));
  }
  return inst;
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string instance_to_json(const Instance& instance) {
  json doc;
  doc["metric"] = instance.metric == Metric::L1 ? "l1" : "linf";
  doc["points"] = json::array();
  for (const UncertainPoint& p : instance.points) {
    json jp;
    jp["weight"] = p.weight;
    jp["locations"] = json::array();
    for (const Location& l : p.locations) jp["locations"].push_back({{"x", l.x}, {"y", l.y}, {"p", l.prob}});
    doc["points"].push_back(std::move(jp));
  }
  return doc.dump() + "\n";
}

std::string solution_to_json(const Solution& solution) {
  const SolverStats& s = solution.stats;
  json doc;
  doc["center"] = {{"x", solution.center.x}, {"y", solution.center.y}};
  doc["objective"] = solution.objective;
  doc["stats"] = {{"method", "prune_and_search"},
                  {"rounds", s.rounds},
                  {"inner_steps", s.inner_steps},
                  {"pruned", s.pruned},
                  {"finish_points", s.finish_points},
                  {"decision_calls", s.decisions.calls},
                  {"decision_planes", s.decisions.planes},
                  {"walk_events", s.decisions.walk_events}};
  return doc.dump() + "\n";
}

std::string oracle_to_json(Point2 center, double objective, const std::string& method) {
  json doc;
  doc["center"] = {{"x", center.x}, {"y", center.y}};
  doc["objective"] = objective;
  doc["stats"] = {{"method", method}};
  return doc.dump() + "\n";
}

std::string trace_to_json(const std::vector<TraceEvent>& trace) {
  json doc = json::array();
  for (const TraceEvent& e : trace) {
    doc.push_back({{"round", e.round},
                   {"step", e.step},
                   {"kind", e.kind},
                   {"rect", {e.rect.x1, e.rect.x2, e.rect.y1, e.rect.y2}},
                   {"median", e.median},
                   {"decision", e.decision},
                   {"pruned_indices", e.pruned_indices}});
  }
  return doc.dump(1) + "\n";
}

namespace {

// 53 random bits mapped to [0, 1).
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1p-53; }

double gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - unit(rng);
  const double u2 = unit(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

Instance generate_instance(std::size_t n, std::size_t m, std::uint64_t seed, Distribution distribution) {
  if (n == 0 || m == 0) throw ValidationError("n and m must be at least 1");
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.points.resize(n);
  for (UncertainPoint& p : inst.points) {
    double cx = 0.0;
    double cy = 0.0;
    if (distribution == Distribution::Clustered) {
      cx = unit(rng);
      cy = unit(rng);
    }
    double total = 0.0;
    p.locations.resize(m);
    for (Location& l : p.locations) {
      if (distribution == Distribution::Uniform) {
        l.x = unit(rng);
        l.y = unit(rng);
      } else {
        l.x = cx + 0.05 * gaussian(rng);
        l.y = cy + 0.05 * gaussian(rng);
      }
      l.prob = 1.0 - unit(rng);
      total += l.prob;
    }
    for (Location& l : p.locations) l.prob /= total;
  }
  return inst;
}

}  // namespace rcenter
