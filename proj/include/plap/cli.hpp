#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plap::cli {

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kInvalidInput = 2,
  kNoConvergence = 3,
  kStructureViolation = 4,
};

/// Runs one command (`args` excludes the program name). Data goes to `out`, diagnostics and
/// progress to `err`.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plap::cli
