#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bor::cli {

/// Process exit codes of the `bor` tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitNumeric = 1,         ///< numeric failure (blow-up, broken invariant)
  kExitInput = 2,           ///< I/O, file format or configuration error
  kExitNonConvergence = 3,  ///< solver finished without meeting its tolerance
};

/// Runs the command line `bor args...` (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bor::cli
