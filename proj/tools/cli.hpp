#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padist::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2, kBudgetError = 3 };

/// Runs one subcommand (args exclude the program name). Output is written to
/// `out` only when the command completes; diagnostics are one line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padist::cli
