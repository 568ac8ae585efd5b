#include <iostream>

#include "ptslab/cli.hpp"

int main(int argc, char** argv) { return ptslab::cli::main(argc, argv, std::cout, std::cerr); }
