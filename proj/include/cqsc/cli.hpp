#ifndef CQSC_CLI_HPP
#define CQSC_CLI_HPP

#include <string>
#include <vector>

namespace cqsc {

/// Exit codes: 0 success, 1 input/validation error, 2 numeric
/// non-convergence, 3 verification-suite failure.
enum ExitCode : int {
    kExitOk = 0,
    kExitValidation = 1,
    kExitNumeric = 2,
    kExitVerifyFailed = 3,
};

/// Runs the command line (args exclude the program name). Testable entry
/// point; tools/main.cpp is a thin wrapper.
int run_cli(std::vector<std::string> args);

} // namespace cqsc

#endif
