#pragma once

#include <string>
#include <vector>

namespace moravak::cli {

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_parse = 2,
    exit_validation = 3,
    exit_computation = 4,
    exit_hypothesis = 5,
};

struct RunResult {
    int exit_code = exit_ok;
    /// Report text for stdout.
    std::string output;
    /// Diagnostics for stderr.
    std::string error;
};

/// Runs one subcommand; args excludes the program name.
RunResult run(const std::vector<std::string>& args);

const char* version();

}  // namespace moravak::cli
