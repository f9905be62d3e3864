#include "plap/fig1.hpp"

#include <cmath>
#include <memory>

#include "plap/error.hpp"

namespace plap::fig1 {

Domain build() {
  std::vector<VertexSpec> vertices{{"x1", 2.0}, {"x2", 2.0}, {"y1", 4.0}, {"y2", 4.0}};
  std::vector<EdgeSpec> edges{{"y1", "x1", 1.0}, {"x1", "x2", 1.0}, {"x2", "y2", 1.0}};
  for (const char* y : {"y1", "y2"}) {
    const std::string tag = y[1] == '1' ? "z1" : "z2";
    for (int k = 1; k <= 3; ++k) {
      const std::string z = tag + std::to_string(k);
      vertices.push_back({z, 1.0});
      edges.push_back({y, z, 1.0});
    }
  }
  auto g = std::make_shared<const WeightedGraph>(std::move(vertices), std::move(edges));
  return Domain::from_ids(std::move(g), {"x1", "x2", "y1", "y2"});
}

double f_eval(double x, double q) {
  if (!(x > 0.0 && x <= 1.0)) throw Error(ErrorKind::domain_error, "f(x, q) needs 0 < x <= 1");
  if (!(q > 0.0)) throw Error(ErrorKind::domain_error, "f(x, q) needs q > 0");
  // 2 a^q + b^q - 3 written with expm1 so small q does not cancel.
  const double log_a = std::log1p(-x);
  const double log_b = std::log1p(-x) - std::log(x);
  return 2.0 * std::expm1(q * log_a) + std::expm1(q * log_b);
}

ScalarReduction solve_xq(double q, double tol) {
  if (!(q > 0.0)) throw Error(ErrorKind::domain_error, "q must be positive");
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tol must be positive");
  constexpr double kEdge = 1e-12;
  constexpr int kMaxIterations = 200;
  double lo = kEdge;
  double hi = 1.0 - kEdge;
  const double f_lo = f_eval(lo, q);
  const double f_hi = f_eval(hi, q);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw Error(ErrorKind::bracket_failure, "f(., q) does not change sign on the bracket for q = " +
                                                std::to_string(q));
  }
  for (int it = 0; it < kMaxIterations && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f_eval(mid, q);
    if (fm == 0.0) {
      lo = hi = mid;
      break;
    }
    (fm > 0.0 ? lo : hi) = mid;
  }
  ScalarReduction r;
  r.q = q;
  r.x_q = 0.5 * (lo + hi);
  r.a = 1.0 - r.x_q;
  r.b = 1.0 / r.x_q - 1.0;
  r.f_value = f_eval(r.x_q, q);
  return r;
}

double xhat_closed_form() {
  const double s = std::sqrt(93.0);
  const double x = 1.0 - std::cbrt((s + 9.0) / 18.0) + std::cbrt((s - 9.0) / 18.0);
  const double a = 1.0 - x;
  if (std::abs(a * a * a - x) > 1e-12) {
    throw Error(ErrorKind::domain_error, "closed form does not satisfy (1 - x)^3 = x");
  }
  return x;
}

DirichletFunction ReducedEigenpair::normalized(const Domain& fig1_domain) const {
  DirichletFunction u = v;
  const double n = p_norm(fig1_domain, u, p);
  for (double& x : u.values) x /= n;
  return u;
}

ReducedEigenpair reduced_eigenpair(double p) {
  if (!(p > 1.0)) throw Error(ErrorKind::invalid_p, "p must be > 1");
  const auto red = solve_xq(p - 1.0);
  ReducedEigenpair out;
  out.p = p;
  out.t = red.x_q;
  out.lambda = 0.5 * std::pow(1.0 - red.x_q, p - 1.0);
  out.v = DirichletFunction{{1.0, 1.0, red.x_q, red.x_q}};
  return out;
}

DirichletFunction limit_function() {
  const double xh = xhat_closed_form();
  const double c = 1.0 / (4.0 + 8.0 * xh);
  return DirichletFunction{{c, c, c * xh, c * xh}};
}

bool convexity_lower_bound_check(double x, const std::vector<double>& q_samples) {
  if (!(x > 0.0 && x < 1.0)) throw Error(ErrorKind::domain_error, "x must lie in (0, 1)");
  const double a = 1.0 - x;
  const double b = 1.0 / x - 1.0;
  const double slope = std::log(a * a * b);
  for (double q : q_samples) {
    if (!(f_eval(x, q) >= slope * q)) return false;
  }
  return true;
}

}  // namespace plap::fig1
