#include <iostream>

#include "smc/cli.hpp"

int main(int argc, char** argv) { return smc::run_cli(argc, argv, std::cout, std::cerr); }
