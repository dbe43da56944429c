#include <iostream>

#include "ffexpand/cli.hpp"

int main(int argc, char** argv) {
    return ffx::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
