#include <iostream>

#include "asymtls/commands.hpp"

int main(int argc, char** argv) { return asymtls::run_cli(argc, argv, std::cout, std::cerr); }
