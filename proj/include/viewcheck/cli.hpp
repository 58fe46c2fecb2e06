#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace viewcheck {

/// Exit codes of the command-line driver.
enum ExitCode : int { kPass = 0, kViolation = 1, kBoundExhausted = 2, kInputError = 3 };

/// Runs the driver; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace viewcheck
