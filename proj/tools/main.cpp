#include <iostream>

#include "cli.hpp"

auto main(int argc, char * argv[]) -> int
{
    return loopcond::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
