#include "hilbstrat/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return hilbstrat::run_cli(argc, argv, std::cout, std::cerr); }
