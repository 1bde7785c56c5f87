#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flipgraph {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitResource = 2,
  kExitVerification = 3,
};

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flipgraph
