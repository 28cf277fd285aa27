#include <iostream>
#include <string>
#include <vector>

#include <nodalcy/cli.hpp>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nodalcy::cli::dispatch(args, std::cout, std::cerr);
}
