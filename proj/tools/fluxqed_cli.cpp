#include <iostream>
#include <string>
#include <vector>

#include "fluxqed/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fluxqed::cli::main(args, std::cout, std::cerr);
}
