#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apfree::cli {

enum ExitCode : int {
  kOk = 0,
  kFound = 1,  // witness found by an avoidance check, or search exhausted
  kUsage = 2,
  kInconclusive = 3,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apfree::cli
