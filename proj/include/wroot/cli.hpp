#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wroot {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitSolverFailure = 2,
  kExitDiscrepancy = 3,
  kExitCellFlagged = 4,
};

/// Runs one subcommand (solve, verify, bench, catalog). `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wroot
