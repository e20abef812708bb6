#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latinpat::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kInvalidInput = 2,
  kInfeasible = 3,
};

/// Runs one command line (without the program name) and returns the exit
/// code. Results go to out, diagnostics and progress to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latinpat::cli
