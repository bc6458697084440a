#include <iostream>

#include "codetopic/cli.hpp"

int main(int argc, char** argv) { return codetopic::run_cli(argc, argv, std::cout, std::cerr); }
