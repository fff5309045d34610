#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace good::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitNumerical = 3,
};

/// Runs `good <subcommand> [flags]`. args excludes the program name. stdin is
/// only consulted by `moments --data -`. On failure nothing is written to
/// `out` and `err` receives one line of the form "error: <kind>: <reason>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace good::cli
