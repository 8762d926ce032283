#include <iostream>

#include "railmule/cli.hpp"

int main(int argc, char** argv) { return railmule::cli::run_cli(argc, argv, std::cout, std::cerr); }
