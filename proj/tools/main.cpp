#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "toric/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    toric::cli::Environment env;
    env.colorAllowed = std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
    return toric::cli::runCli(args, std::cout, std::cerr, env);
}
