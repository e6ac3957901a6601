#include <iostream>

#include "ltp/cli.hpp"

int main(int argc, char** argv) {
    return ltp::cli::run_args(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
