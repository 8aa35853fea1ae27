#include <iostream>

#include "arpe/cli.hpp"

int main(int argc, char** argv) { return arpe::run_cli(argc, argv, std::cout, std::cerr); }
