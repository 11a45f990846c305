#include <iostream>

#include "absence/cli.hpp"

int main(int argc, char** argv) { return absence::run_cli(argc, argv, std::cout, std::cerr); }
