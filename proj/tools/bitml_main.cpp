#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "bitml/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const bool color = ::isatty(STDERR_FILENO) != 0 && std::getenv("NO_COLOR") == nullptr;
    return bitml::cli::run(args, {std::cout, std::cerr, color});
}
