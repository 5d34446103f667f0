#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace revive::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 2,
  kNumericalError = 3,
};

/// Runs one `revive` invocation. `args` excludes the program name. Records go
/// to files named by the flags (or `out` where a command reports on stdout);
/// diagnostics go to `err` as a single line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace revive::cli
