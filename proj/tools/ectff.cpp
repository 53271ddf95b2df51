#include <iostream>

#include "ectff/cli.hpp"

int main(int argc, char** argv) { return ectff::cli::run(argc, argv, std::cout, std::cerr, std::cin); }
