#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fockzero
{

/// Exit codes of the command-line front end.
enum ExitCode : int
{
    exit_ok = 0,
    exit_verdict_failed = 1,
    exit_usage = 2,
    exit_domain = 3,
};

/// Runs one subcommand; `args` excludes the program name.
int cli_dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace fockzero
