#include <iostream>

#include "sqmod/cli.hpp"

int main(int argc, char** argv) { return sqmod::cli::run_cli(argc, argv, std::cout, std::cerr); }
