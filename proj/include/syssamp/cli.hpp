#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace syssamp::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
};

/// Runs the command line `args` (program name excluded). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace syssamp::cli
