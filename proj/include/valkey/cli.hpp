#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace valkey {

/// Exit codes of the `valkey` tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitViolation = 1, ///< property violation, falsified key, failed sequence-key check
    kExitInput = 2,     ///< malformed input or unsupported operation
    kExitBudget = 3,    ///< budget exhausted, unknown or indeterminate
};

/// Runs the command line `args` (without the program name) and writes the report
/// to `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace valkey
