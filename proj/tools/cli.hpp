#pragma once

#include <iosfwd>

namespace medea::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kUsage = 2, kSolver = 3 };

/// Full command-line entry point; `argv[0]` is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace medea::cli
