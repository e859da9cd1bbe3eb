#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sphericity::cli {

/// Exit status contract of the command-line tool.
enum ExitCode : int { kSuccess = 0, kInternalError = 1, kInputError = 2 };

/// Runs `sphericity <subcommand> ...`; args excludes the program name.
/// Subcommands: test, simulate, power, diagnose.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphericity::cli
