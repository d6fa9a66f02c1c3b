// Entry point of the toric-lnd command-line tool.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace toric::cli {

struct Environment
{
    bool colorAllowed = false;   // text reports may use ANSI colors
};

/**
 * Runs one command. `args` excludes the program name. Exit codes: 0 success,
 * 1 assertion failure, 2 input error, 3 degenerate geometry, 4 nilpotency
 * unverifiable.
 */
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env = {});

}   // namespace toric::cli
