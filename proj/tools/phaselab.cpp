#include <iostream>

#include "phaselab/cli.hpp"

int main(int argc, char** argv) { return phaselab::cli::main(argc, argv, std::cout, std::cerr); }
