#include <iostream>
#include <string>
#include <vector>

#include "implode/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return implode::cli::run(args, std::cout, std::cerr);
}
