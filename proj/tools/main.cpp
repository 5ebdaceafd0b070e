#include <vector>

#include "cqsc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cqsc::run_cli(std::move(args));
}
