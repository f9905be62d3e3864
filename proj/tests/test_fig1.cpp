#include <cmath>
#include <vector>

#include "doctest.h"
#include "plap/cheeger.hpp"
#include "plap/error.hpp"
#include "plap/fig1.hpp"
#include "plap/spectral.hpp"

using namespace plap;

namespace {
constexpr double kXhat = 0.317672196171980672630516260289;
}

TEST_CASE("example graph layout") {
  const auto d = fig1::build();
  const auto& g = d.graph();
  CHECK(g.num_vertices() == 10);
  CHECK(g.num_edges() == 9);
  CHECK(d.size() == 4);
  CHECK(g.id(d.omega()[0]) == "x1");
  CHECK(g.id(d.omega()[3]) == "y2");
  CHECK(g.mu(g.index("x2")) == 2.0);
  CHECK(g.mu(g.index("y1")) == 4.0);
  CHECK(g.mu(g.index("z23")) == 1.0);
  CHECK(volume(d, d.omega()) == 12.0);
  CHECK(boundary_weight(g, d.omega()) == 6.0);
  CHECK(is_connected(d));
}

TEST_CASE("scalar function values") {
  CHECK(fig1::f_eval(1.0, 0.5) == -3.0);
  CHECK(fig1::f_eval(1.0, 2.0) == -3.0);
  CHECK(fig1::f_eval(0.5, 1.0) == doctest::Approx(-1.0).epsilon(1e-15));
  // f(x, q) ~ q ln(a^2 b) as q -> 0.
  const double x = 0.4;
  const double slope = std::log((1 - x) * (1 - x) * (1 / x - 1));
  CHECK(fig1::f_eval(x, 1e-9) == doctest::Approx(1e-9 * slope).epsilon(1e-6));
  CHECK(std::abs(fig1::f_eval(x, 1e-300)) < 1e-290);
  for (double bad_x : {0.0, -0.1, 1.5, std::nan("")}) CHECK_THROWS_AS(fig1::f_eval(bad_x, 1.0), Error);
  CHECK_THROWS_AS(fig1::f_eval(0.5, 0.0), Error);
  CHECK_THROWS_AS(fig1::f_eval(0.5, -1.0), Error);
}

TEST_CASE("scalar root at q = 1") {
  const auto r = fig1::solve_xq(1.0);
  CHECK(r.x_q == doctest::Approx(0.36602540378443865).epsilon(1e-13));
  CHECK(std::abs(r.f_value) <= 1e-12);
  CHECK(r.a == doctest::Approx(1 - r.x_q));
  CHECK(r.b == doctest::Approx(1 / r.x_q - 1));
}

TEST_CASE("roots decrease towards the cubic root") {
  const double xhat = fig1::xhat_closed_form();
  CHECK(xhat == doctest::Approx(kXhat).epsilon(1e-15));
  CHECK(std::abs(std::pow(1 - xhat, 3) - xhat) <= 1e-12);
  CHECK(std::abs(std::pow(1 - xhat, 2) * (1 / xhat - 1) - 1.0) <= 1e-12);
  double previous = fig1::solve_xq(1.0).x_q;
  for (int k = 1; k <= 40; ++k) {
    const double x = fig1::solve_xq(std::ldexp(1.0, -k)).x_q;
    CHECK(x <= previous + 1e-14);
    CHECK(x >= xhat - 1e-12);
    previous = x;
  }
  CHECK(std::abs(fig1::solve_xq(std::ldexp(1.0, -20)).x_q - xhat) <= 1e-4);
  CHECK_THROWS_AS(fig1::solve_xq(0.0), Error);
}

TEST_CASE("reduced eigenpair") {
  const auto d = fig1::build();
  const auto two = fig1::reduced_eigenpair(2.0);
  CHECK(two.t == doctest::Approx(0.36602540378443865).epsilon(1e-13));
  CHECK(two.lambda == doctest::Approx(0.31698729810778068).epsilon(1e-13));
  for (double p : {1.5, 2.0, 3.0}) {
    const auto pair = fig1::reduced_eigenpair(p);
    const auto v = pair.normalized(d);
    CHECK(p_norm(d, v, p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rayleigh_quotient(d, v, p) == doctest::Approx(pair.lambda).epsilon(1e-12));
    CHECK(eigen_residual(d, pair.lambda, v, p, p < 2 ? 1e-10 : 0.0) <= 1e-9);
  }
}

TEST_CASE("solver agrees with the reduction") {
  const auto d = fig1::build();
  for (double p : {1.5, 1.25, 1.125, 1.0625}) {
    const auto pair = first_eigenpair(d, p);
    const auto reduced = fig1::reduced_eigenpair(p);
    CHECK(std::abs(pair.lambda - reduced.lambda) <= 1e-8);
    CHECK(max_abs_diff(pair.u, reduced.normalized(d)) <= 1e-6);
    CHECK(pair.lambda <= 0.5 + 1e-9);
  }
}

TEST_CASE("limit function") {
  const auto d = fig1::build();
  const auto u = fig1::limit_function();
  CHECK(u[0] == doctest::Approx(0.152872997987703129603579252735).epsilon(1e-15));
  CHECK(u[1] == u[0]);
  CHECK(u[2] == doctest::Approx(0.0485635010061484351982103736325).epsilon(1e-15));
  CHECK(u[3] == u[2]);
  CHECK(p_norm(d, u, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rayleigh_quotient(d, u, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("convexity lower bound") {
  std::vector<double> qs;
  for (int k = -10; k <= 4; ++k) qs.push_back(std::ldexp(1.0, k));
  for (double x : {0.2, kXhat, 0.5}) CHECK(fig1::convexity_lower_bound_check(x, qs));
}
