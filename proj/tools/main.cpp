#include <iostream>
#include <string>
#include <vector>

#include "chibar/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return chibar::run_cli(args, std::cout, std::cerr);
}
