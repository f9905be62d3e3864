#include "plap/continuation.hpp"

#include <cmath>

#include "plap/cheeger.hpp"

namespace plap {

std::vector<double> default_schedule(int steps) {
  if (steps < 2) throw Error(ErrorKind::invalid_steps, "a schedule needs at least 2 steps");
  if (steps > 52) throw Error(ErrorKind::invalid_steps, "1 + 2^-k is not representable beyond k = 52");
  std::vector<double> out;
  for (int k = 1; k <= steps; ++k) out.push_back(1.0 + std::ldexp(1.0, -k));
  return out;
}

SweepReport sweep(const Domain& d, const std::vector<double>& schedule, const SolverOptions& opts,
                  const SweepTolerances& tol, const std::function<void(const SweepRecord&)>& progress) {
  if (schedule.empty()) throw Error(ErrorKind::invalid_steps, "empty schedule");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 1.0)) throw Error(ErrorKind::invalid_p, "schedule values must exceed 1");
    if (i > 0 && !(schedule[i] < schedule[i - 1])) {
      throw Error(ErrorKind::invalid_steps, "schedule must be strictly decreasing");
    }
  }
  if (!is_connected(d)) throw Error(ErrorKind::disconnected_domain, "omega is not connected");

  SweepReport report;
  report.schedule = schedule;
  try {
    report.h = cheeger_constant(d).h;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::domain_too_large) throw;
    report.warnings.push_back("omega exceeds the enumeration limit; ceiling and limit checks disabled");
  }

  SolverOptions local = opts;
  for (double p : schedule) {
    Eigenpair pair;
    try {
      pair = first_eigenpair(d, p, local);
    } catch (const NoConvergence& e) {
      report.limit_estimate = e.state().u;
      throw SweepNoConvergence("p = " + std::to_string(p) + ": " + e.what(), std::move(report));
    }
    if (report.h && pair.lambda > *report.h + tol.ceiling) {
      report.warnings.push_back("lambda exceeds h at p = " + std::to_string(p));
    }
    local.initial_guess = pair.u;
    report.records.push_back({p, pair.lambda, pair.u, pair.residual, pair.iterations});
    if (progress) progress(report.records.back());
  }

  report.limit_estimate = report.records.back().u;
  const bool steady = report.records.size() >= 2 &&
                      max_abs_diff(report.records.back().u, report.records[report.records.size() - 2].u) <=
                          tol.u_step;
  const bool at_h = !report.h || std::abs(report.records.back().lambda - *report.h) <= tol.lambda;
  report.converged = steady && at_h;
  if (report.converged) report.decomposition = decompose_limit(d, report.limit_estimate, tol.delta);
  return report;
}

Decomposition extract_and_verify(const Domain& d, const SweepReport& report, double delta) {
  if (!report.converged) throw Error(ErrorKind::not_converged, "sweep did not converge");
  const auto cheeger = cheeger_constant(d);
  const auto structure = check_eigenfunction_structure(d, cheeger, report.limit_estimate, delta);
  for (std::size_t n = 0; n < structure.set_is_cheeger_cut.size(); ++n) {
    if (!structure.set_is_cheeger_cut[n]) {
      throw Error(ErrorKind::structure_violation,
                  "level set " + std::to_string(n + 1) + " of the limit is not a Cheeger cut");
    }
  }
  if (!structure.nested) throw Error(ErrorKind::structure_violation, "level sets are not strictly nested");
  if (!structure.quotient_matches_h) {
    throw Error(ErrorKind::structure_violation, "E~1 of the limit differs from h");
  }
  return structure.decomposition;
}

}  // namespace plap
