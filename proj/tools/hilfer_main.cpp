#include <iostream>

#include "hilfer/cli.hpp"

int main(int argc, char** argv) { return hilfer::cli::main(argc, argv, std::cout, std::cerr); }
