#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qpcalc::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kUncertified = 2,
};

// Runs one qpcalc invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpcalc::cli
