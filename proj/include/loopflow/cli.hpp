#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopflow {

/// Exit codes of the loopflow tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitDefect = 1,
  kExitParse = 2,
  kExitNotDivergenceFree = 3,
  kExitGridMismatch = 4,
  kExitBadParams = 5,
};

/// Runs the tool with `args` (program name excluded). Results go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loopflow
