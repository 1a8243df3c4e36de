#include <iostream>
#include <string>
#include <vector>

#include "acmatch/cli.hpp"

int main(int argc, char** argv) {
    return acmatch::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                            std::cerr);
}
