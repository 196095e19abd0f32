#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gerstner::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,    // I/O and other unexpected failures
  kUsage = 2,      // bad flags or unparseable input
  kConstraint = 3, // parameters violate a constraint
  kNumerical = 4,  // a solver did not converge
};

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace gerstner::cli
