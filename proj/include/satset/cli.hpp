#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace satset::cli {

enum ExitCode : int {
  kOk = 0,
  kPrecondition = 2,
  kMismatch = 3,
  kInfeasible = 4,
};

/// Runs one command line (without the program name). Output goes to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace satset::cli
