#include <cstdlib>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::optional<std::string> format;
    if (const char* env = std::getenv("AGREELOSS_FORMAT"); env != nullptr && *env != '\0') format = env;
    return agreeloss::cli::run(args, std::cout, std::cerr, format);
}
