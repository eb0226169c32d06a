#include <iostream>

#include "valkey/cli.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return valkey::run_cli(args, std::cout, std::cerr);
}
