#include <iostream>

#include "cil/cli.hpp"

int main(int argc, char** argv) { return cil::cli::run(argc, argv, std::cout, std::cerr); }
