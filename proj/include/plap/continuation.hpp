#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plap/error.hpp"
#include "plap/graph.hpp"
#include "plap/one_laplacian.hpp"
#include "plap/spectral.hpp"

namespace plap {

/// p_k = 1 + 2^-k for k = 1..steps.
std::vector<double> default_schedule(int steps);

struct SweepTolerances {
  double u_step = 1e-4;   // sup-distance between the last two eigenfunctions
  double lambda = 1e-3;   // |lambda_last - h|
  double ceiling = 1e-9;  // allowed excess of lambda over h
  double delta = 1e-6;    // level clustering for the limit decomposition
};

struct SweepRecord {
  double p = 0.0;
  double lambda = 0.0;
  DirichletFunction u;
  double residual = 0.0;
  int iterations = 0;
};

struct SweepReport {
  std::vector<double> schedule;
  std::vector<SweepRecord> records;
  /// Exact Cheeger constant; nullopt when Omega exceeds the enumeration limit.
  std::optional<double> h;
  DirichletFunction limit_estimate;
  std::optional<Decomposition> decomposition;
  bool converged = false;
  std::vector<std::string> warnings;
};

/// Solver failure part-way through a sweep; carries the records computed so far.
class SweepNoConvergence : public Error {
 public:
  SweepNoConvergence(const std::string& what, SweepReport partial)
      : Error(ErrorKind::no_convergence, what), partial_(std::move(partial)) {}
  const SweepReport& partial() const noexcept { return partial_; }

 private:
  SweepReport partial_;
};

/// Solves the first eigenpair along a strictly decreasing schedule (all p > 1), warm-starting each
/// solve from the previous eigenfunction. h is enumerated first; beyond the enumeration limit the
/// sweep runs without ceiling/limit checks and records a warning.
/// `progress` (optional) sees each record as it is produced.
SweepReport sweep(const Domain& d, const std::vector<double>& schedule, const SolverOptions& opts = {},
                  const SweepTolerances& tol = {},
                  const std::function<void(const SweepRecord&)>& progress = {});

/// Decomposes the limit estimate of a converged sweep and checks that every level set is a
/// Cheeger cut and that the sets are strictly nested. Throws not_converged or structure_violation.
Decomposition extract_and_verify(const Domain& d, const SweepReport& report, double delta = 1e-6);

}  // namespace plap
