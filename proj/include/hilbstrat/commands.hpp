#pragma once

#include <iosfwd>

namespace hilbstrat {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
    kExitBudget = 3,
};

/// Parses argv and runs one subcommand. Results go to `out`, diagnostics to
/// `err`. Returns one of ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace hilbstrat
