#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bhbent::cli {

enum ExitCode : int { ok = 0, bad_input = 2, budget_exceeded = 3 };

/// Parses `args` (without the program name), runs the subcommand and writes
/// the report to `out` (or to --output). Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bhbent::cli
