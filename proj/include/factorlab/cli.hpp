#pragma once

#include <string>
#include <vector>

namespace factorlab::cli {

/// Exit codes: 0 success, 2 validation error, 3 budget or cap exceeded,
/// 4 property violation (verify commands).
struct CliResult {
    int exit_code = 0;
    std::string output;
};

/// Runs one job from argv-style arguments (program name excluded).
CliResult run(const std::vector<std::string>& args);

int main_entry(int argc, char** argv);

}  // namespace factorlab::cli
