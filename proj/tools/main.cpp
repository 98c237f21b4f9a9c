#include "bqs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return bqs::run_cli(argc, argv, std::cout, std::cerr); }
