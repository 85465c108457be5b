#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frobkit::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kInvalidInput = 2,
  kResourceLimit = 3,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frobkit::cli
