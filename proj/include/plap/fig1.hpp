#pragma once

#include <vector>

#include "plap/graph.hpp"

namespace plap::fig1 {

/// The four-vertex example domain: path y1 - x1 - x2 - y2 with unit weights,
/// mu(x1) = mu(x2) = 2, mu(y1) = mu(y2) = 4, and three unit-weight pendant boundary
/// vertices on each of y1 (z11, z12, z13) and y2 (z21, z22, z23), boundary mu = 1.
/// Omega = {x1, x2, y1, y2}; canonical order lists Omega first.
Domain build();

/// f(x, q) = 2(1 - x)^q + (1/x - 1)^q - 3 on 0 < x <= 1, q > 0.
double f_eval(double x, double q);

struct ScalarReduction {
  double q = 0.0;
  double x_q = 0.0;  // root of f(., q); equals t_p for p = q + 1
  double a = 0.0;    // 1 - x_q
  double b = 0.0;    // 1/x_q - 1
  double f_value = 0.0;
};

/// Unique root of f(., q) by bisection on [1e-12, 1 - 1e-12] (f is decreasing in x).
ScalarReduction solve_xq(double q, double tol = 1e-14);

/// Real root of (1 - x)^3 = x via the Cardano closed form (~0.31767).
double xhat_closed_form();

struct ReducedEigenpair {
  double p = 0.0;
  double lambda = 0.0;  // (1 - t_p)^(p-1) / 2
  double t = 0.0;
  DirichletFunction v;  // (1, 1, t, t) on (x1, x2, y1, y2)

  /// v / |v|_p with the mu-weighted norm.
  DirichletFunction normalized(const Domain& fig1_domain) const;
};

ReducedEigenpair reduced_eigenpair(double p);

/// The p -> 1 limit (1, 1, xhat, xhat) / (4 + 8 xhat).
DirichletFunction limit_function();

/// True iff f(x, q) >= ln(a^2 b) q for every sampled q, with a = 1 - x, b = 1/x - 1.
bool convexity_lower_bound_check(double x, const std::vector<double>& q_samples);

}  // namespace plap::fig1
