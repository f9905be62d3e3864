#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plap {

enum class ErrorKind {
  invalid_graph,
  invalid_domain,
  subset_not_in_omega,
  invalid_p,
  zero_function,
  negative_values,
  singular_difference,
  domain_too_large,
  disconnected_domain,
  no_convergence,
  not_converged,
  structure_violation,
  invalid_steps,
  domain_error,
  bracket_failure,
  invalid_argument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every library failure; `kind()` is the stable machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace plap
