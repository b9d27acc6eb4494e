#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace isolab {

enum ExitCode : int
{
    exit_ok = 0,
    exit_usage = 1,
    exit_domain = 2,
    exit_check_failed = 3,
};

/// Runs one subcommand. `args` excludes the program name. Data goes to `out`
/// (or the --output file), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isolab
