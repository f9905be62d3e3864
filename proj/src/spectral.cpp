#include "plap/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace plap {
namespace {

void require_p(double p, double lower, bool strict) {
  const bool ok = strict ? p > lower : p >= lower;
  if (!ok || !std::isfinite(p)) {
    throw Error(ErrorKind::invalid_p, std::string("p must be ") + (strict ? "> " : ">= ") +
                                          std::to_string(lower) + ", got " + std::to_string(p));
  }
}

void require_nonzero(const DirichletFunction& u) {
  if (std::all_of(u.values.begin(), u.values.end(), [](double v) { return v == 0.0; })) {
    throw Error(ErrorKind::zero_function, "function vanishes identically on omega");
  }
}

// phi(t) = (t^2 + eps^2)^((p-2)/2) t, or |t|^(p-2) t at eps = 0 (continuous extension 0 at t = 0).
double kernel(double t, double p, double eps) {
  if (p == 2.0) return t;
  if (eps == 0.0) return t == 0.0 ? 0.0 : std::pow(std::abs(t), p - 2.0) * t;
  return std::pow(t * t + eps * eps, 0.5 * (p - 2.0)) * t;
}

double kernel_derivative(double t, double p, double eps) {
  if (p == 2.0) return 1.0;
  if (eps == 0.0) {
    if (t == 0.0) return p > 2.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return (p - 1.0) * std::pow(std::abs(t), p - 2.0);
  }
  const double s = t * t + eps * eps;
  return std::pow(s, 0.5 * (p - 4.0)) * ((p - 1.0) * t * t + eps * eps);
}

// Edges touching Omega in local indices; `b` is npos for an edge to the exterior.
struct LocalEdge {
  std::size_t a;
  std::size_t b;
  double w;
};
constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::vector<LocalEdge> local_edges(const Domain& d) {
  std::vector<LocalEdge> out;
  for (const auto& e : d.graph().edges()) {
    auto a = d.local_index(e.u);
    auto b = d.local_index(e.v);
    if (!a && !b) continue;
    if (!a) std::swap(a, b);
    out.push_back({*a, b ? *b : npos, e.w});
  }
  return out;
}

std::vector<double> omega_mu(const Domain& d) {
  std::vector<double> mu;
  mu.reserve(d.size());
  for (Vertex v : d.omega()) mu.push_back(d.graph().mu(v));
  return mu;
}

// K_i(u) = sum_{y~x_i} w phi(u_i - u_y) = mu_i * (-Delta_p u)(x_i).
std::vector<double> stiffness_action(const std::vector<LocalEdge>& edges, const std::vector<double>& u,
                                     double p, double eps) {
  std::vector<double> k(u.size(), 0.0);
  for (const auto& e : edges) {
    const double ub = e.b == npos ? 0.0 : u[e.b];
    const double f = e.w * kernel(u[e.a] - ub, p, eps);
    k[e.a] += f;
    if (e.b != npos) k[e.b] -= f;
  }
  return k;
}

double smoothed_mass(const std::vector<double>& mu, const std::vector<double>& u, double p, double eps) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += mu[i] * std::pow(u[i] * u[i] + eps * eps, 0.5 * p);
  return s;
}

// Shared state of one solve: topology, measures and the current exponent/regularization.
struct Problem {
  const Domain& domain;
  std::vector<LocalEdge> edges;
  std::vector<double> mu;
  double p;

  double quotient(const std::vector<double>& u, double eps) const {
    DirichletFunction f{u};
    return regularized_energy(domain, f, p, eps) / smoothed_mass(mu, u, p, eps);
  }

  std::vector<double> quotient_gradient(const std::vector<double>& u, double eps) const {
    DirichletFunction f{u};
    const double r = regularized_energy(domain, f, p, eps);
    const double s = smoothed_mass(mu, u, p, eps);
    auto g = regularized_energy_gradient(domain, f, p, eps);
    for (std::size_t i = 0; i < u.size(); ++i) {
      g[i] = (g[i] - (r / s) * p * mu[i] * kernel(u[i], p, eps)) / s;
    }
    return g;
  }

  void normalize(std::vector<double>& u) const {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += mu[i] * std::pow(std::abs(u[i]), p);
    const double scale = 1.0 / std::pow(s, 1.0 / p);
    for (double& v : u) v *= scale;
  }
};

// Projected Armijo descent: step along -grad, take |.|, renormalize on the p-sphere.
int descent(const Problem& prob, std::vector<double>& u, double eps, int max_steps, double& alpha) {
  constexpr double kShrink = 0.5;
  constexpr double kSufficientDecrease = 1e-4;
  int steps = 0;
  double q = prob.quotient(u, eps);
  for (; steps < max_steps; ++steps) {
    const auto g = prob.quotient_gradient(u, eps);
    const double g2 = std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
    if (g2 == 0.0) break;
    alpha = std::min(alpha * 2.0, 1e8);
    bool accepted = false;
    std::vector<double> v(u.size());
    for (int k = 0; k < 80; ++k) {
      for (std::size_t i = 0; i < u.size(); ++i) v[i] = std::abs(u[i] - alpha * g[i]);
      if (std::any_of(v.begin(), v.end(), [](double x) { return x > 0.0; })) {
        prob.normalize(v);
        const double qv = prob.quotient(v, eps);
        if (qv <= q - kSufficientDecrease * alpha * g2) {
          u = v;
          q = qv;
          accepted = true;
          break;
        }
      }
      alpha *= kShrink;
    }
    if (!accepted) break;
  }
  return steps;
}

struct NewtonOutcome {
  bool converged = false;
  int steps = 0;
};

// Damped Newton on the bordered system
//   K_i(u) - lambda mu_i phi(u_i) = 0   (rows scaled by 1/mu_i),
//   sum mu_i u_i^p - 1 = 0,
// accepting only strictly positive iterates.
NewtonOutcome newton(const Problem& prob, std::vector<double>& u, double eps, double tol, int max_steps) {
  const std::size_t n = u.size();
  const auto& mu = prob.mu;
  const double p = prob.p;

  auto residual = [&](const std::vector<double>& x, double lambda, Eigen::VectorXd& out) {
    const auto k = stiffness_action(prob.edges, x, p, eps);
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      out(static_cast<Eigen::Index>(i)) = (k[i] - lambda * mu[i] * kernel(x[i], p, eps)) / mu[i];
      norm += mu[i] * std::pow(x[i], p);
    }
    out(static_cast<Eigen::Index>(n)) = norm - 1.0;
  };
  auto inf_norm = [&](const Eigen::VectorXd& r) { return r.head(static_cast<Eigen::Index>(n)).lpNorm<Eigen::Infinity>(); };

  std::vector<double> x = u;
  prob.normalize(x);
  double lambda = 0.0;
  {
    const auto k = stiffness_action(prob.edges, x, p, eps);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      num += x[i] * k[i];
      den += mu[i] * x[i] * kernel(x[i], p, eps);
    }
    lambda = num / den;
  }

  Eigen::VectorXd r(static_cast<Eigen::Index>(n + 1));
  residual(x, lambda, r);
  double merit = r.squaredNorm();
  NewtonOutcome out;
  for (;;) {
    if (inf_norm(r) <= 1e-3 * tol && std::abs(r(static_cast<Eigen::Index>(n))) <= 1e-14) break;
    if (out.steps >= max_steps) break;
    ++out.steps;

    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n + 1), static_cast<Eigen::Index>(n + 1));
    for (const auto& e : prob.edges) {
      const double xb = e.b == npos ? 0.0 : x[e.b];
      const double dk = e.w * kernel_derivative(x[e.a] - xb, p, eps);
      const auto a = static_cast<Eigen::Index>(e.a);
      jac(a, a) += dk / mu[e.a];
      if (e.b != npos) {
        const auto b = static_cast<Eigen::Index>(e.b);
        jac(b, b) += dk / mu[e.b];
        jac(a, b) -= dk / mu[e.a];
        jac(b, a) -= dk / mu[e.b];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const auto last = static_cast<Eigen::Index>(n);
      jac(ii, ii) -= lambda * kernel_derivative(x[i], p, eps);
      jac(ii, last) = -kernel(x[i], p, eps);
      jac(last, ii) = p * mu[i] * std::pow(x[i], p - 1.0);
    }
    if (!jac.allFinite()) break;
    const Eigen::VectorXd delta = jac.fullPivLu().solve(-r);
    if (!delta.allFinite()) break;

    bool accepted = false;
    std::vector<double> trial(n);
    Eigen::VectorXd rt(r.size());
    for (double step = 1.0; step > 1e-10; step *= 0.5) {
      bool positive = true;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = x[i] + step * delta(static_cast<Eigen::Index>(i));
        positive = positive && trial[i] > 0.0;
      }
      if (!positive) continue;
      const double lt = lambda + step * delta(static_cast<Eigen::Index>(n));
      residual(trial, lt, rt);
      const double mt = rt.squaredNorm();
      if (mt < merit * (1.0 - 1e-4 * step)) {
        x = trial;
        lambda = lt;
        r = rt;
        merit = mt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  out.converged = inf_norm(r) <= tol && std::abs(r(static_cast<Eigen::Index>(n))) <= 1e-12 &&
                  std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; });
  if (out.converged) u = x;
  return out;
}

}  // namespace

double dirichlet_energy(const Domain& d, const DirichletFunction& u, double p) {
  require_p(p, 1.0, false);
  check_shape(d, u);
  double total = 0.0;
  for (const auto& e : d.graph().edges()) {
    const double t = std::abs(value_at(d, u, e.v) - value_at(d, u, e.u));
    if (t == 0.0) continue;
    total += e.w * (p == 1.0 ? t : std::pow(t, p));
  }
  return total;
}

double rayleigh_quotient(const Domain& d, const DirichletFunction& u, double p) {
  require_p(p, 1.0, false);
  check_shape(d, u);
  require_nonzero(u);
  return dirichlet_energy(d, u, p) / p_norm_pow(d, u, p);
}

DirichletFunction apply_p_laplacian(const Domain& d, const DirichletFunction& u, double p,
                                    double epsilon) {
  require_p(p, 1.0, true);
  check_shape(d, u);
  if (!(epsilon >= 0.0)) throw Error(ErrorKind::invalid_argument, "epsilon must be >= 0");
  const auto& g = d.graph();
  DirichletFunction out = zero_function(d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Vertex x = d.omega()[i];
    double acc = 0.0;
    for (const auto& nb : g.neighbors(x)) {
      const double diff = value_at(d, u, nb.vertex) - u[i];
      if (diff == 0.0 && p < 2.0 && epsilon == 0.0) {
        throw Error(ErrorKind::singular_difference,
                    "zero difference on edge {" + g.id(x) + "," + g.id(nb.vertex) + "} with p < 2");
      }
      acc += nb.w * kernel(diff, p, epsilon);
    }
    out[i] = acc / g.mu(x);
  }
  return out;
}

double eigen_residual(const Domain& d, double lambda, const DirichletFunction& u, double p,
                      double epsilon) {
  check_shape(d, u);
  require_nonzero(u);
  const auto lap = apply_p_laplacian(d, u, p, epsilon);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    worst = std::max(worst, std::abs(-lap[i] - lambda * kernel(u[i], p, epsilon)));
  }
  return worst;
}

double regularized_energy(const Domain& d, const DirichletFunction& u, double p, double epsilon) {
  require_p(p, 1.0, false);
  check_shape(d, u);
  double total = 0.0;
  for (const auto& e : local_edges(d)) {
    const double t = u[e.a] - (e.b == npos ? 0.0 : u[e.b]);
    total += e.w * std::pow(t * t + epsilon * epsilon, 0.5 * p);
  }
  return total;
}

std::vector<double> regularized_energy_gradient(const Domain& d, const DirichletFunction& u, double p,
                                                double epsilon) {
  require_p(p, 1.0, false);
  check_shape(d, u);
  auto k = stiffness_action(local_edges(d), u.values, p, epsilon);
  for (double& v : k) v *= p;
  return k;
}

double default_tolerance(double p) { return p >= 1.5 ? 1e-9 : 1e-6; }

std::vector<double> default_epsilon_schedule() {
  std::vector<double> s;
  for (int k = 2; k <= 10; ++k) s.push_back(std::pow(10.0, -k));
  return s;
}

Eigenpair first_eigenpair(const Domain& d, double p, const SolverOptions& opts) {
  require_p(p, 1.0, true);
  if (!is_connected(d)) throw Error(ErrorKind::disconnected_domain, "omega is not connected");
  const double tol = opts.tolerance.value_or(default_tolerance(p));
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tolerance must be positive");
  if (opts.max_iterations <= 0) throw Error(ErrorKind::invalid_argument, "max_iterations must be positive");

  std::vector<double> stages{0.0};
  if (p < 2.0) {
    stages = opts.epsilon_schedule.empty() ? default_epsilon_schedule() : opts.epsilon_schedule;
    for (std::size_t i = 0; i < stages.size(); ++i) {
      if (!(stages[i] > 0.0) || (i > 0 && !(stages[i] < stages[i - 1]))) {
        throw Error(ErrorKind::invalid_argument, "epsilon schedule must be positive and strictly decreasing");
      }
    }
  }

  Problem prob{d, local_edges(d), omega_mu(d), p};
  std::vector<double> u(d.size(), 1.0);
  if (opts.initial_guess) {
    check_shape(d, *opts.initial_guess);
    require_nonzero(*opts.initial_guess);
    u = opts.initial_guess->values;
    double top = 0.0;
    for (double& v : u) top = std::max(top, v = std::abs(v));
    for (double& v : u) v = std::max(v, 1e-12 * top);
  }
  prob.normalize(u);

  int iterations = 0;
  auto diagnostic = [&](double eps) {
    Eigenpair state;
    state.p = p;
    state.u = DirichletFunction{u};
    state.lambda = rayleigh_quotient(d, state.u, p);
    state.residual = eigen_residual(d, state.lambda, state.u, p, eps);
    state.iterations = iterations;
    state.epsilon_final = eps;
    return state;
  };

  constexpr int kDescentBatch = 100;
  double alpha = 1.0;
  for (double eps : stages) {
    for (;;) {
      constexpr int kNewtonSteps = 60;
      const auto nr = newton(prob, u, eps, tol, std::min(kNewtonSteps, opts.max_iterations - iterations));
      iterations += nr.steps;
      if (nr.converged) break;
      if (iterations >= opts.max_iterations) {
        throw NoConvergence("iteration budget exhausted at epsilon " + std::to_string(eps), diagnostic(eps));
      }
      const int taken = descent(prob, u, eps, std::min(kDescentBatch, opts.max_iterations - iterations), alpha);
      iterations += taken;
      if (taken == 0) {
        // Neither Newton nor descent can move: report the stall.
        throw NoConvergence("solver stalled at epsilon " + std::to_string(eps), diagnostic(eps));
      }
    }
  }

  prob.normalize(u);
  Eigenpair result = diagnostic(stages.back());
  if (result.residual > tol) {
    throw NoConvergence("final residual " + std::to_string(result.residual) + " above tolerance",
                        std::move(result));
  }
  return result;
}

}  // namespace plap
