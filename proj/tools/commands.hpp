#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace barrier::cli {

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kError = 1,
    kUsage = 2,
    kNoInitialBarrier = 3,
    kSequentialOnly = 4,
};

// Runs the CLI with argv-style arguments (args[0] is the program name).
// Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace barrier::cli
