#include <cmath>
#include <memory>

#include "doctest.h"
#include "plap/continuation.hpp"
#include "plap/error.hpp"
#include "plap/fig1.hpp"

using namespace plap;

TEST_CASE("default schedule") {
  CHECK(default_schedule(3) == std::vector<double>{1.5, 1.25, 1.125});
  const auto s = default_schedule(12);
  CHECK(s.size() == 12);
  CHECK(s.back() == 1.0 + std::ldexp(1.0, -12));
  for (int bad : {-1, 0, 1, 53}) CHECK_THROWS_AS(default_schedule(bad), Error);
}

TEST_CASE("sweep on the example graph") {
  const auto d = fig1::build();
  int seen = 0;
  const auto report = sweep(d, default_schedule(12), {}, {}, [&](const SweepRecord&) { ++seen; });
  CHECK(seen == 12);
  REQUIRE(report.records.size() == 12);
  REQUIRE(report.h);
  CHECK(*report.h == 0.5);
  CHECK(report.converged);
  CHECK(report.warnings.empty());
  CHECK(max_abs_diff(report.limit_estimate, fig1::limit_function()) <= 2e-3);
  CHECK(std::abs(report.records.back().lambda - 0.5) <= 1e-3);
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    CHECK(r.lambda <= 0.5 + 1e-9);
    CHECK(r.residual <= default_tolerance(r.p));
    // mirror symmetry x1 <-> x2, y1 <-> y2
    CHECK(std::abs(r.u[0] - r.u[1]) <= 1e-10);
    CHECK(std::abs(r.u[2] - r.u[3]) <= 1e-10);
  }
  REQUIRE(report.decomposition);
  CHECK(report.decomposition->sets.size() == 2);

  const auto dec = extract_and_verify(d, report);
  REQUIRE(dec.sets.size() == 2);
  CHECK(dec.sets[0] == d.omega());
  CHECK(dec.sets[1] == d.vertex_set({"x1", "x2"}));
}

TEST_CASE("sweep on a single vertex is exact") {
  auto g = std::make_shared<const WeightedGraph>(std::vector<VertexSpec>{{"x", 1}, {"o1", 1}, {"o2", 1}},
                                                 std::vector<EdgeSpec>{{"x", "o1", 0.75}, {"x", "o2", 1.0}});
  const auto d = Domain::from_ids(g, {"x"});
  const auto report = sweep(d, default_schedule(6));
  CHECK(report.converged);
  for (const auto& r : report.records) {
    CHECK(r.lambda == doctest::Approx(1.75).epsilon(1e-14));
    CHECK(r.u[0] == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto dec = extract_and_verify(d, report);
  CHECK(dec.sets.size() == 1);
}

TEST_CASE("symmetric cycle gives a single level") {
  // 4-cycle a-b-c-d inside Omega with one unit pendant per vertex: h = 1 attained only by Omega.
  std::vector<VertexSpec> vs{{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}, {"pa", 1}, {"pb", 1}, {"pc", 1}, {"pd", 1}};
  std::vector<EdgeSpec> es{{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}, {"d", "a", 1},
                           {"a", "pa", 1}, {"b", "pb", 1}, {"c", "pc", 1}, {"d", "pd", 1}};
  const auto d = Domain::from_ids(std::make_shared<const WeightedGraph>(vs, es), {"a", "b", "c", "d"});
  const auto report = sweep(d, default_schedule(14));
  REQUIRE(report.converged);
  const auto dec = extract_and_verify(d, report);
  REQUIRE(dec.sets.size() == 1);
  CHECK(dec.sets[0] == d.omega());
  CHECK(dec.coefficients[0] == doctest::Approx(std::pow(4.0, -1.0 / report.records.back().p)).epsilon(1e-9));
}

TEST_CASE("sweep errors") {
  const auto d = fig1::build();
  CHECK_THROWS_AS(sweep(d, {}), Error);
  CHECK_THROWS_AS(sweep(d, {1.5, 1.5}), Error);
  CHECK_THROWS_AS(sweep(d, {1.5, 1.0}), Error);

  SweepReport unfinished;
  unfinished.converged = false;
  try {
    extract_and_verify(d, unfinished);
    FAIL("expected not-converged");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_converged);
  }

  SweepReport wrong;
  wrong.converged = true;
  wrong.limit_estimate = indicator(d, d.vertex_set({"x1", "y1"}));
  try {
    extract_and_verify(d, wrong);
    FAIL("expected structure-violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::structure_violation);
  }

  SolverOptions tight;
  tight.max_iterations = 1;
  try {
    sweep(d, default_schedule(4), tight);
    FAIL("expected no-convergence");
  } catch (const SweepNoConvergence& e) {
    CHECK(e.kind() == ErrorKind::no_convergence);
    CHECK(e.partial().limit_estimate.size() == 4);
  }
}
