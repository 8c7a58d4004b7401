#pragma once

#include <ostream>

namespace braidgrowth::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Parses and runs one invocation. Results go to `out` (or the --out file),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace braidgrowth::cli
