#include <iostream>
#include <string>
#include <vector>

#include <cyclofermat/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cyclofermat::cli::run(args, std::cout);
}
