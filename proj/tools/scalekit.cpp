#include <iostream>

#include "scalekit/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return scalekit::run(args, std::cout, std::cerr);
}
