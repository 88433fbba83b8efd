#include "rcenter/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rcenter/decision.hpp"
#include "rcenter/io.hpp"
#include "rcenter/model.hpp"
#include "rcenter/oracle.hpp"
#include "rcenter/solver.hpp"

namespace rcenter {

namespace {

struct Common {
  std::string input;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  std::string metric;
  std::string trace_path;
};

Instance load(const Common& c) {
  Instance inst = read_instance_file(c.input);
  if (c.metric == "l1") inst.metric = Metric::L1;
  if (c.metric == "linf") inst.metric = Metric::Linf;
  return inst;
}

void guard_size(const Instance& inst) {
  std::size_t total = 0;
  for (const UncertainPoint& p : inst.points) total += p.locations.size();
  if (total > kCliMaxLocations)
    throw SizeGuardError("instance has " + std::to_string(total) + " locations, limit " +
                         std::to_string(kCliMaxLocations));
}

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(std::string("bad number in ") + what + ": " + item);
    }
  }
  if (out.size() != count)
    throw ValidationError(std::string(what) + " needs " + std::to_string(count) + " comma-separated numbers");
  return out;
}

Distribution parse_distribution(const std::string& name) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "clustered") return Distribution::Clustered;
  throw ValidationError("distribution must be uniform or clustered");
}

int cmd_solve(const Common& c, std::ostream& out) {
  const Instance inst = load(c);
  guard_size(inst);
  SolverConfig cfg;
  cfg.seed = c.seed;
  cfg.tolerance = c.tolerance;
  cfg.trace = !c.trace_path.empty();
  const Solution sol = solve(inst, cfg);
  if (cfg.trace) {
    std::ofstream f(c.trace_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + c.trace_path);
    f << trace_to_json(sol.stats.trace);
  }
  out << solution_to_json(sol);
  return 0;
}

int cmd_oracle(const Common& c, bool approx, double tol, std::ostream& out) {
  const Instance inst = load(c);
  const OracleResult r = approx ? oracle_center_approx(inst, tol) : oracle_center(inst);
  out << oracle_to_json(r.center, r.value, approx ? "golden_section" : "exhaustive");
  return 0;
}

int cmd_decide(const Common& c, const std::string& line_text, const std::string& rect_text,
               std::ostream& out) {
  Instance inst = normalize_instance(load(c));
  guard_size(inst);
  if (inst.metric == Metric::Linf) inst = to_l1_frame(inst).first;
  inst = apply_weight_reduction(std::move(inst));
  const std::vector<PointPrep> preps = build_preps(inst);
  const auto l = parse_numbers(line_text, 3, "--line");
  Rect rect = Solver::initial_rect(preps);
  if (!rect_text.empty()) {
    const auto r = parse_numbers(rect_text, 4, "--rect");
    rect = {r[0], r[1], r[2], r[3]};
    if (!(rect.x1 <= rect.x2 && rect.y1 <= rect.y2) || !rect.bounded())
      throw ValidationError("--rect needs finite x1 <= x2 and y1 <= y2");
  }
  LineSpec line(1.0, 0.0, 0.0);
  try {
    line = LineSpec(l[0], l[1], l[2]);
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("--line: ") + e.what());
  }
  std::vector<PredecessorCursor> cursors;
  for (std::size_t i = 0; i < preps.size(); ++i) cursors.push_back(make_cursor(preps[i], i, rect));
  const DecisionOutcome d = decide_side(preps, cursors, rect, {}, line, nullptr, c.tolerance);
  nlohmann::json doc;
  switch (d.kind) {
    case DecisionOutcome::Kind::FoundCenter:
      doc["decision"] = "center";
      doc["center"] = {{"x", d.point.x}, {"y", d.point.y}};
      doc["objective"] = d.value;
      break;
    case DecisionOutcome::Kind::PositiveSide:
      doc["decision"] = "positive";
      break;
    case DecisionOutcome::Kind::NegativeSide:
      doc["decision"] = "negative";
      break;
  }
  out << doc.dump() << "\n";
  return 0;
}

int cmd_gen(std::size_t n, std::size_t m, std::uint64_t seed, const std::string& dist,
            const std::string& metric, const std::string& output, std::ostream& out) {
  Instance inst = generate_instance(n, m, seed, parse_distribution(dist));
  if (metric == "linf") inst.metric = Metric::Linf;
  const std::string text = instance_to_json(inst);
  if (output.empty()) {
    out << text;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + output);
    f << text;
  }
  return 0;
}

int cmd_bench(const std::vector<std::size_t>& ns, const std::vector<std::size_t>& ms,
              std::size_t repeats, std::uint64_t seed, const std::string& dist, std::ostream& out) {
  if (ns.empty() || ms.empty() || repeats == 0) throw ValidationError("bench needs sizes and repeats >= 1");
  const Distribution d = parse_distribution(dist);
  out << "n,m,mn,median_ns,p90_ns\n";
  for (std::size_t n : ns) {
    for (std::size_t m : ms) {
      std::vector<double> samples;
      for (std::size_t r = 0; r < repeats; ++r) {
        const Instance inst = generate_instance(n, m, seed + r, d);
        SolverConfig cfg;
        cfg.seed = seed + r;
        const auto t0 = std::chrono::steady_clock::now();
        const Solution sol = solve(inst, cfg);
        const auto t1 = std::chrono::steady_clock::now();
        if (!std::isfinite(sol.objective)) throw std::runtime_error("non-finite objective");
        samples.push_back(std::chrono::duration<double, std::nano>(t1 - t0).count());
      }
      std::sort(samples.begin(), samples.end());
      const double median = samples[(samples.size() - 1) / 2];
      const std::size_t rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(samples.size())));
      const double p90 = samples[std::max<std::size_t>(rank, 1) - 1];
      out << n << "," << m << "," << n * m << "," << static_cast<long long>(median) << ","
          << static_cast<long long>(p90) << "\n";
    }
  }
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool with_seed) {
  sub->add_option("--input", c.input, "instance JSON file")->required();
  sub->add_option("--metric", c.metric, "override the instance metric")->check(CLI::IsMember({"l1", "linf"}));
  sub->add_option("--tolerance", c.tolerance, "relative tolerance of decisions");
  if (with_seed) sub->add_option("--seed", c.seed, "random seed");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rectilinear one-center of uncertain points"};
  app.require_subcommand(1);

  Common solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "compute the center");
  add_common(solve_cmd, solve_args, true);
  solve_cmd->add_option("--emit-trace", solve_args.trace_path, "write decision trace JSON here");

  Common oracle_args;
  bool approx = false;
  double tol = 1e-6;
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference center");
  add_common(oracle_cmd, oracle_args, true);
  oracle_cmd->add_flag("--approx", approx, "nested golden-section search instead of exhaustive");
  oracle_cmd->add_option("--tol", tol, "absolute objective tolerance of --approx");

  Common decide_args;
  std::string line_text;
  std::string rect_text;
  auto* decide_cmd = app.add_subcommand("decide", "which side of a line holds the center");
  add_common(decide_cmd, decide_args, true);
  decide_cmd->add_option("--line", line_text, "a,b,c for the line a*x + b*y = c")->required();
  decide_cmd->add_option("--rect", rect_text, "x1,x2,y1,y2 known to contain a center");

  std::size_t gen_n = 0;
  std::size_t gen_m = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_dist = "uniform";
  std::string gen_metric = "l1";
  std::string gen_output;
  auto* gen_cmd = app.add_subcommand("gen", "write a random instance");
  gen_cmd->add_option("--n", gen_n, "number of points")->required();
  gen_cmd->add_option("--m", gen_m, "locations per point")->required();
  gen_cmd->add_option("--seed", gen_seed, "random seed");
  gen_cmd->add_option("--distribution", gen_dist, "uniform or clustered");
  gen_cmd->add_option("--metric", gen_metric)->check(CLI::IsMember({"l1", "linf"}));
  gen_cmd->add_option("--output", gen_output, "file to write (default stdout)");

  std::vector<std::size_t> bench_n;
  std::vector<std::size_t> bench_m;
  std::size_t repeats = 5;
  std::uint64_t bench_seed = 0;
  std::string bench_dist = "uniform";
  auto* bench_cmd = app.add_subcommand("bench", "time solve over a grid of sizes (CSV)");
  bench_cmd->add_option("--n", bench_n, "comma-separated point counts")->required()->delimiter(',');
  bench_cmd->add_option("--m", bench_m, "comma-separated location counts")->required()->delimiter(',');
  bench_cmd->add_option("--repeats", repeats, "samples per size");
  bench_cmd->add_option("--seed", bench_seed, "base seed");
  bench_cmd->add_option("--distribution", bench_dist, "uniform or clustered");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_args, out);
    if (oracle_cmd->parsed()) return cmd_oracle(oracle_args, approx, tol, out);
    if (decide_cmd->parsed()) return cmd_decide(decide_args, line_text, rect_text, out);
    if (gen_cmd->parsed()) return cmd_gen(gen_n, gen_m, gen_seed, gen_dist, gen_metric, gen_output, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_n, bench_m, repeats, bench_seed, bench_dist, out);
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what();
    if (e.point_index() >= 0) err << " (point " << e.point_index();
    if (e.location_index() >= 0) err << ", location " << e.location_index();
    if (e.point_index() >= 0) err << ")";
    err << "\n";
    return 2;
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace rcenter
