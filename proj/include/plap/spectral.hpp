#pragma once

#include <optional>
#include <vector>

#include "plap/error.hpp"
#include "plap/graph.hpp"

namespace plap {

/// E_p(u) = sum over unordered edges {x,y} of w_xy |u(y) - u(x)|^p, with u = 0 off Omega.
double dirichlet_energy(const Domain& d, const DirichletFunction& u, double p);

/// Modified energy E_p(u) / |u|_p^p (mu-weighted). Throws zero_function for u == 0.
double rayleigh_quotient(const Domain& d, const DirichletFunction& u, double p);

/// Dirichlet p-Laplacian on Omega:
///   (Delta_p u)(x) = (1/mu_x) sum_{y~x} w_xy phi(u(y) - u(x)),
/// with phi(t) = |t|^(p-2) t when epsilon == 0 and phi(t) = (t^2 + eps^2)^((p-2)/2) t otherwise.
/// For p < 2 and epsilon == 0 a zero difference on an edge touching Omega is singular.
DirichletFunction apply_p_laplacian(const Domain& d, const DirichletFunction& u, double p,
                                    double epsilon);

/// max_x |-(Delta_p u)(x) - lambda phi(u(x))| over Omega, same kernel on both sides.
double eigen_residual(const Domain& d, double lambda, const DirichletFunction& u, double p,
                      double epsilon);

/// sum over edges of w (t^2 + eps^2)^(p/2); equals E_p(u) at epsilon = 0.
/// Edges with both ends outside Omega are skipped (they only add a constant).
double regularized_energy(const Domain& d, const DirichletFunction& u, double p, double epsilon);

/// Gradient of regularized_energy with respect to the Omega values.
std::vector<double> regularized_energy_gradient(const Domain& d, const DirichletFunction& u, double p,
                                                double epsilon);

struct SolverOptions {
  /// Residual target; when unset, 1e-9 for p >= 1.5 and 1e-6 below.
  std::optional<double> tolerance;
  int max_iterations = 20000;
  /// Regularization stages used for p < 2; empty selects 1e-2, 1e-3, ..., 1e-10.
  std::vector<double> epsilon_schedule;
  std::optional<DirichletFunction> initial_guess;
};

double default_tolerance(double p);
std::vector<double> default_epsilon_schedule();

struct Eigenpair {
  double p = 2.0;
  double lambda = 0.0;
  DirichletFunction u;
  double residual = 0.0;
  int iterations = 0;
  double epsilon_final = 0.0;
};

/// Raised when the iteration budget runs out; carries the last iterate.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, Eigenpair state)
      : Error(ErrorKind::no_convergence, what), state_(std::move(state)) {}
  const Eigenpair& state() const noexcept { return state_; }

 private:
  Eigenpair state_;
};

/// First eigenpair of the Dirichlet p-Laplacian for p > 1.
///
/// Minimizes the (regularized) Rayleigh quotient from the positive start 1_Omega (or the
/// warm start): projected Armijo descent on the p-sphere followed by Newton polishing of the
/// eigen-equation, once per epsilon stage. The returned u is positive with |u|_p = 1,
/// lambda = rayleigh_quotient(u), and residual = eigen_residual at epsilon_final.
Eigenpair first_eigenpair(const Domain& d, double p, const SolverOptions& opts = {});

}  // namespace plap
