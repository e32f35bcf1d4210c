#include <iostream>

#include "sumnet/cli.hpp"

int main(int argc, char** argv) { return sumnet::run_cli(argc, argv, std::cout, std::cerr); }
