#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rcenter/cli.hpp"
#include "rcenter/io.hpp"
#include "support.hpp"

using namespace rcenter;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "rcenter");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto dir = std::filesystem::temp_directory_path() / "rcenter_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << contents;
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("solve prints the result schema") {
  const Run r = run({"solve", "--input", rctest::data_path("two_points.json")});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["objective"].get<double>() == doctest::Approx(5.0));
  CHECK(doc["center"]["x"].get<double>() == doctest::Approx(5.0));
  CHECK(doc["stats"].is_object());
  CHECK(doc["stats"].contains("rounds"));

  const Run single = run({"solve", "--input", rctest::data_path("single.json")});
  CHECK(json::parse(single.out)["objective"].get<double>() == 0.0);
}

TEST_CASE("solve is byte-identical per seed") {
  const std::string input = temp_file("det.json", instance_to_json(generate_instance(300, 5, 9)));
  const Run a = run({"solve", "--input", input, "--seed", "1"});
  const Run b = run({"solve", "--input", input, "--seed", "1"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Run w1 = run({"solve", "--input", rctest::data_path("weighted.json"), "--seed", "1"});
  const Run w2 = run({"solve", "--input", rctest::data_path("weighted.json"), "--seed", "1"});
  CHECK(w1.out == w2.out);
}

TEST_CASE("malformed and invalid input exit with 2") {
  const Run bad = run({"solve", "--input", temp_file("bad.json", "{\"points\": [\n  {\"locations\": [oops]}]}")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(bad.err.find("column") != std::string::npos);

  const Run neg = run({"solve", "--input", temp_file("neg.json", R"({"points":[{"locations":[{"x":0,"y":0,"p":-1}]}]})")});
  CHECK(neg.code == 2);
  CHECK(neg.err.find("point 0, location 0") != std::string::npos);

  const Run missing = run({"solve", "--input", temp_file("missing.json", R"({"points":[{"locations":[{"x":0,"y":0}]}]})")});
  CHECK(missing.code == 2);
  CHECK(run({"solve", "--input", "/nonexistent/file.json"}).code == 2);
  CHECK(run({"solve"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"solve", "--input", rctest::data_path("single.json"), "--metric", "l2"}).code == 2);
}

TEST_CASE("oracle shares the schema and guards its size") {
  const Run o = run({"oracle", "--input", rctest::data_path("two_points.json")});
  REQUIRE(o.code == 0);
  const json doc = json::parse(o.out);
  CHECK(doc["objective"].get<double>() == doctest::Approx(5.0));
  const json solved = json::parse(run({"solve", "--input", rctest::data_path("two_points.json")}).out);
  for (const auto& [key, value] : solved.items()) CHECK(doc.contains(key));

  const std::string big = temp_file("big.json", instance_to_json(generate_instance(30, 5, 2)));
  const Run guarded = run({"oracle", "--input", big});
  CHECK(guarded.code == 3);
  const Run approx = run({"oracle", "--input", big, "--approx", "--tol", "1e-6"});
  CHECK(approx.code == 0);
  const Run solved_big = run({"solve", "--input", big});
  CHECK(json::parse(approx.out)["objective"].get<double>() ==
        doctest::Approx(json::parse(solved_big.out)["objective"].get<double>()).epsilon(2e-6));
}

TEST_CASE("decide reports sides and on-line centers") {
  const std::string input = rctest::data_path("two_points.json");
  const Run left = run({"decide", "--input", input, "--line", "1,0,2", "--rect", "-100,100,-100,100"});
  REQUIRE(left.code == 0);
  CHECK(json::parse(left.out)["decision"] == "positive");
  const Run on = run({"decide", "--input", input, "--line", "1,0,5"});
  const json doc = json::parse(on.out);
  CHECK(doc["decision"] == "center");
  CHECK(doc["objective"].get<double>() == doctest::Approx(5.0));
  CHECK(run({"decide", "--input", input, "--line", "1,0"}).code == 2);
  CHECK(run({"decide", "--input", input, "--line", "0,0,1"}).code == 2);
  CHECK(run({"decide", "--input", input, "--line", "1,0,1", "--rect", "1,0,0,1"}).code == 2);
}

TEST_CASE("gen is deterministic and normalized") {
  const Run a = run({"gen", "--n", "5", "--m", "3", "--seed", "42"});
  const Run b = run({"gen", "--n", "5", "--m", "3", "--seed", "42"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != run({"gen", "--n", "5", "--m", "3", "--seed", "43"}).out);
  const Instance inst = parse_instance(a.out);
  REQUIRE(inst.points.size() == 5);
  for (const UncertainPoint& p : inst.points) {
    REQUIRE(p.locations.size() == 3);
    double sum = 0.0;
    for (const Location& l : p.locations) sum += l.prob;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
  }
  const Run clustered = run({"gen", "--n", "3", "--m", "4", "--distribution", "clustered"});
  CHECK(clustered.code == 0);
  CHECK(run({"gen", "--n", "0", "--m", "3"}).code == 2);
  CHECK(run({"gen", "--n", "2", "--m", "3", "--distribution", "banana"}).code == 2);

  const std::string out = (std::filesystem::temp_directory_path() / "rcenter_cli_test" / "gen.json").string();
  CHECK(run({"gen", "--n", "5", "--m", "3", "--seed", "42", "--output", out}).code == 0);
  CHECK(read_file(out) == a.out);
}

TEST_CASE("bench prints CSV rows") {
  const Run r = run({"bench", "--n", "10,20", "--m", "3", "--repeats", "1"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,m,mn,median_ns,p90_ns");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows == 2);
  CHECK(r.out.find("\n20,3,60,") != std::string::npos);
}

TEST_CASE("trace emission and metric override") {
  const std::string input = temp_file("trace_in.json", instance_to_json(generate_instance(100, 3, 4)));
  const std::string trace = (std::filesystem::temp_directory_path() / "rcenter_cli_test" / "trace.json").string();
  const Run r = run({"solve", "--input", input, "--emit-trace", trace});
  REQUIRE(r.code == 0);
  const json events = json::parse(read_file(trace));
  REQUIRE(events.is_array());
  REQUIRE_FALSE(events.empty());
  for (const json& e : events) {
    CHECK(e.contains("round"));
    CHECK(e.contains("step"));
    CHECK(e["rect"].size() == 4);
    CHECK(e.contains("median"));
    CHECK(e.contains("decision"));
    CHECK(e["pruned_indices"].is_array());
  }

  const std::string pts = temp_file("linf.json", R"({"points":[{"locations":[{"x":0,"y":0,"p":1}]},{"locations":[{"x":2,"y":0,"p":1}]}]})");
  const Run linf = run({"solve", "--input", pts, "--metric", "linf"});
  CHECK(json::parse(linf.out)["objective"].get<double>() == doctest::Approx(1.0));
  const Run l1 = run({"solve", "--input", pts});
  CHECK(json::parse(l1.out)["objective"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("gen, solve and oracle agree on small instances") {
  for (int seed = 0; seed < 30; ++seed) {
    const std::string n = std::to_string(1 + seed % 10);
    const std::string m = std::to_string(1 + seed % 5);
    const Run g = run({"gen", "--n", n, "--m", m, "--seed", std::to_string(seed), "--distribution",
                       seed % 2 == 0 ? "uniform" : "clustered"});
    const std::string path = temp_file("rt.json", g.out);
    const double solved = json::parse(run({"solve", "--input", path}).out)["objective"].get<double>();
    const double exact = json::parse(run({"oracle", "--input", path}).out)["objective"].get<double>();
    CHECK(std::abs(solved - exact) <= 1e-7 * std::max(1.0, exact));
  }
}
