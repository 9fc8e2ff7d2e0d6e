#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dsn {

// Exit codes of the dsn tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInconsistent = 1,
  kExitInvalid = 2,
  kExitBudget = 3,
  kExitCorruption = 4,
};

// Runs the dsn command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsn
