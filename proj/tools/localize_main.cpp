#include <iostream>
#include <string>
#include <vector>

#include "experiments/cli.hpp"

int main(int argc, char** argv) {
    return localize::tools::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
