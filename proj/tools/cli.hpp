#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsur::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kIo = 1, kValidation = 2, kNumeric = 3 };

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// JSON stats go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsur::cli
