#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symrank::cli {

enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kNotMet = 2,  // also usage errors and invalid parameters
  kCap = 3,
};

/// Runs one command line (without the program name). Everything the command
/// prints goes to `out`/`err`; files are written only where --out says.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symrank::cli
