#include <iostream>
#include <vector>

#include "dicheck/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dicheck::cli::run(args, std::cout, std::cerr);
}
