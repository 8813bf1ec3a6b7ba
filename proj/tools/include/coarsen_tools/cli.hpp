#pragma once

#include <iosfwd>

namespace coarsen::tools {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  /// Unreadable or malformed input, bad flags or config.
  kExitInput = 1,
  /// The requested coarse size cannot be reached.
  kExitInfeasible = 2,
  /// --strict and some bound check failed.
  kExitBounds = 3,
  /// A computation failed (eigensolver did not converge, ...).
  kExitCompute = 4,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coarsen::tools
