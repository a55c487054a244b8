#include "telescope/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return telescope::run_cli(argc, argv, std::cout, std::cerr); }
