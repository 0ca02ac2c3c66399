#ifndef SUBLAT_TOOLS_CLI_HPP
#define SUBLAT_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace sublat_cli
{

/// Exit codes of run_cli.
enum : int
{
  exit_ok = 0,
  exit_error = 1,
  exit_mismatch = 2,
};

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace sublat_cli

#endif
