#include <iostream>

#include "unitsurf_tools/cli.hpp"

int main(int argc, char** argv) { return unitsurf::cli::run_cli(argc, argv, std::cout, std::cerr); }
