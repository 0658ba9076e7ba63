#include "ergocycle/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ergocycle::cli::run(argc, argv, std::cout, std::cerr); }
