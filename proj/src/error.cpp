#include "plap/error.hpp"

namespace plap {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_graph: return "invalid-graph";
    case ErrorKind::invalid_domain: return "invalid-domain";
    case ErrorKind::subset_not_in_omega: return "subset-not-in-omega";
    case ErrorKind::invalid_p: return "invalid-p";
    case ErrorKind::zero_function: return "zero-function";
    case ErrorKind::negative_values: return "negative-values";
    case ErrorKind::singular_difference: return "singular-difference";
    case ErrorKind::domain_too_large: return "domain-too-large";
    case ErrorKind::disconnected_domain: return "disconnected-domain";
    case ErrorKind::no_convergence: return "no-convergence";
    case ErrorKind::not_converged: return "not-converged";
    case ErrorKind::structure_violation: return "structure-violation";
    case ErrorKind::invalid_steps: return "invalid-steps";
    case ErrorKind::domain_error: return "domain-error";
    case ErrorKind::bracket_failure: return "bracket-failure";
    case ErrorKind::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace plap
