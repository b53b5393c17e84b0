#include <iostream>

#include "eofkit/cli.hpp"

int main(int argc, char** argv) { return eofkit::cli::run_cli(argc, argv, std::cout, std::cerr); }
