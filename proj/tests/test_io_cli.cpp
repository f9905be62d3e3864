#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "plap/cli.hpp"
#include "plap/error.hpp"
#include "plap/fig1.hpp"
#include "plap/io.hpp"

using namespace plap;
namespace fs = std::filesystem;

namespace {

const std::string kFig1 = std::string(PLAP_DATA_DIR) + "/fig1.json";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::parse_and_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& content) {
  const auto dir = fs::temp_directory_path() / "plap_tests";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

std::string last_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return last;
}

}  // namespace

TEST_CASE("malformed json names line and column") {
  try {
    io::parse_json_text("{\n  \"vertices\": [,]\n}", "bad.json");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_argument);
    CHECK(std::string(e.what()).find("bad.json:2:") != std::string::npos);
  }
}

TEST_CASE("problem fields are validated with their path") {
  auto doc = io::problem_to_json(fig1::build());
  doc["edges"][3]["w"] = -1.0;
  try {
    io::parse_problem(doc);
    FAIL("expected invalid graph");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("edges[3].w") != std::string::npos);
  }
  auto missing = io::problem_to_json(fig1::build());
  missing.erase("omega");
  CHECK_THROWS_AS(io::parse_problem(missing), Error);
}

TEST_CASE("problem round trip") {
  const auto d = fig1::build();
  const auto again = io::parse_problem(io::problem_to_json(d));
  CHECK(again.omega() == d.omega());
  CHECK(again.graph().num_edges() == d.graph().num_edges());
  CHECK(io::problem_to_json(again) == io::problem_to_json(d));
  CHECK(io::problem_to_json(io::load_problem(kFig1)) == io::problem_to_json(d));
}

TEST_CASE("function files") {
  const auto d = fig1::build();
  const auto u = io::parse_function(d, io::json::parse(R"({"values": {"x1": 1.5, "y2": 0.25}})"));
  CHECK(u == DirichletFunction{{1.5, 0, 0, 0.25}});
  CHECK_THROWS_AS(io::parse_function(d, io::json::parse(R"({"values": {"z11": 1}})")), Error);
  CHECK_THROWS_AS(io::parse_function(d, io::json::parse(R"({"values": {"x1": "a"}})")), Error);
  const auto limit = fig1::limit_function();
  CHECK(io::parse_function(d, io::to_json(d, limit)) == limit);
}

TEST_CASE("cheeger command") {
  const auto r = run({"cheeger", kFig1});
  CHECK(r.code == cli::kOk);
  const auto doc = io::json::parse(r.out);
  CHECK(doc["h"] == 0.5);
  CHECK(doc["cuts"].size() == 4);
  CHECK(doc["cuts"][0]["subset"] == io::json::parse(R"(["x1", "x2"])"));
}

TEST_CASE("exit codes for invalid input") {
  CHECK(run({"eigen", kFig1, "--p", "0.5"}).code == cli::kInvalidInput);
  CHECK(run({"eigen", kFig1, "--p", "1"}).code == cli::kInvalidInput);
  CHECK(run({"cheeger", "/nonexistent/graph.json"}).code == cli::kInvalidInput);
  CHECK(run({"bogus"}).code == cli::kInvalidInput);
  CHECK(run({}).code == cli::kInvalidInput);
  CHECK(run({"sweep", kFig1, "--steps", "1"}).code == cli::kInvalidInput);
  CHECK(run({"sweep", kFig1, "--format", "xml"}).code == cli::kInvalidInput);
  const auto bad = scratch("bad.json", "{\"vertices\": [}\n");
  const auto r = run({"cheeger", bad.string()});
  CHECK(r.code == cli::kInvalidInput);
  CHECK(r.err.find(":1:") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("no convergence exit code") {
  const auto r = run({"eigen", kFig1, "--p", "1.5", "--max-iter", "1"});
  CHECK(r.code == cli::kNoConvergence);
  CHECK(io::json::parse(r.out)["iterations"] == 1);  // last state still goes to stdout
  CHECK(r.err.find("no-convergence") != std::string::npos);
  CHECK(run({"sweep", kFig1, "--steps", "3", "--max-iter", "1", "--quiet"}).code == cli::kNoConvergence);
}

TEST_CASE("short sweep is reported as not converged") {
  const auto r = run({"sweep", kFig1, "--steps", "8", "--quiet"});
  CHECK(r.code == cli::kNoConvergence);
  CHECK(io::json::parse(r.out)["converged"] == false);
  CHECK(r.err.find("not-converged") != std::string::npos);
}

TEST_CASE("sweep csv") {
  const auto r = run({"sweep", kFig1, "--steps", "12", "--format", "csv", "--quiet"});
  CHECK(r.code == cli::kOk);
  CHECK(r.err.empty());
  CHECK(r.out.rfind("p,lambda,residual,x1,x2,y1,y2\n", 0) == 0);
  const auto row = last_line(r.out);
  const auto first = row.find(',');
  const auto second = row.find(',', first + 1);
  CHECK(std::stod(row.substr(0, first)) == 1.0 + std::ldexp(1.0, -12));
  CHECK(std::abs(std::stod(row.substr(first + 1, second - first - 1)) - 0.5) <= 1e-3);

  const auto noisy = run({"sweep", kFig1, "--steps", "3"});
  CHECK(noisy.err.find("p = 1.5") != std::string::npos);
  const auto doc = io::json::parse(noisy.out);  // progress never reaches stdout
  CHECK(doc["records"].size() == 3);
}

TEST_CASE("sweep json with csv side file") {
  const auto csv = fs::temp_directory_path() / "plap_tests" / "sweep.csv";
  fs::create_directories(csv.parent_path());
  const auto r = run({"--quiet", "sweep", kFig1, "--steps", "12", "--csv", csv.string()});
  CHECK(r.code == cli::kOk);
  const auto doc = io::json::parse(r.out);
  CHECK(doc["converged"] == true);
  CHECK(doc["decomposition"]["N"] == 2);
  std::ifstream in(csv);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == run({"sweep", kFig1, "--steps", "12", "--format", "csv", "--quiet"}).out);
}

TEST_CASE("commands are deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"cheeger", kFig1},
      {"eigen", kFig1, "--p", "1.25"},
      {"sweep", kFig1, "--steps", "12", "--quiet"},
      {"example-fig1", "--p", "1.5"},
  };
  for (const auto& c : commands) {
    const auto a = run(c);
    const auto b = run(c);
    CHECK(a.code == cli::kOk);
    CHECK(a.out == b.out);
  }
  const auto f = scratch("limit.json", io::to_json(fig1::build(), fig1::limit_function()).dump());
  const auto v1 = run({"verify", kFig1, "--function", f.string(), "--seed", "5", "--samples", "200"});
  const auto v2 = run({"--seed", "5", "verify", kFig1, "--function", f.string(), "--samples", "200"});
  CHECK(v1.code == cli::kOk);
  CHECK(v1.out == v2.out);
}

TEST_CASE("eigen output feeds decompose and verify unchanged") {
  const auto e = run({"eigen", kFig1, "--p", "1.0625"});
  REQUIRE(e.code == cli::kOk);
  const auto path = scratch("eigen.json", e.out);
  const auto dec = run({"decompose", kFig1, "--function", path.string()});
  CHECK(dec.code == cli::kOk);
  const auto doc = io::json::parse(dec.out);
  CHECK(doc["N"] == 2);
  const auto ver = run({"verify", kFig1, "--function", path.string()});
  CHECK(ver.code == cli::kOk);
  CHECK(io::json::parse(ver.out)["ok"] == true);

  // The emitted u is bit-identical after reading it back.
  const auto d = fig1::build();
  const auto pair = io::json::parse(e.out);
  const auto u = io::parse_function(d, pair);
  CHECK(io::to_json(d, u) == pair["u"]);

  // Warm start from the same file converges immediately.
  const auto warm = run({"eigen", kFig1, "--p", "1.0625", "--warm-start", path.string()});
  CHECK(warm.code == cli::kOk);
  CHECK(io::json::parse(warm.out)["iterations"].get<int>() <= pair["iterations"].get<int>());
}

TEST_CASE("verify reports failures in the body") {
  const auto d = fig1::build();
  const auto f = scratch("wrong.json", io::to_json(d, indicator(d, d.vertex_set({"x1", "y1"}))).dump());
  const auto r = run({"verify", kFig1, "--function", f.string(), "--samples", "50"});
  CHECK(r.code == cli::kOk);
  const auto doc = io::json::parse(r.out);
  CHECK(doc["ok"] == false);
  CHECK(doc["structure"]["set_is_cheeger_cut"][0] == false);
}

TEST_CASE("example command") {
  const auto r = run({"example-fig1", "--p", "2"});
  CHECK(r.code == cli::kOk);
  const auto doc = io::json::parse(r.out);
  CHECK(doc["xhat"].get<double>() == doctest::Approx(0.3176721961719807).epsilon(1e-15));
  CHECK(doc["cross_validation"]["t"].get<double>() == doctest::Approx(0.36602540378443865).epsilon(1e-13));
  CHECK(doc["cross_validation"]["lambda_difference"].get<double>() <= 1e-8);
  CHECK(doc["cheeger"]["h"] == 0.5);
  CHECK(run({"example-fig1", "--p", "2", "--sweep", "4"}).code == cli::kInvalidInput);
  const auto s = run({"example-fig1", "--sweep", "6", "--quiet"});
  CHECK(s.code == cli::kOk);
}
