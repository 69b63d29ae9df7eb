#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace imc::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInternalError = 1,
  kInputError = 2,
  kNotConverged = 3,
  kSizeCap = 4,
};

/// Runs one imc command. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imc::cli
