#pragma once

#include <iosfwd>

namespace cubasquare
{

enum ExitCode
{
    exit_pass = 0,
    exit_fail = 1,
    exit_usage = 2,
};

/// Runs one `cubasquare` command. Normal output goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cubasquare
