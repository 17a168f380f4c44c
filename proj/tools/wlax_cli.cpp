#include <iostream>
#include <string>
#include <vector>

#include "wlax/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return wlax::run(args, std::cout, std::cerr);
}
