#include <iostream>

#include "catbn/cli.hpp"

int main(int argc, char** argv) { return catbn::cli::run(argc, argv, std::cout, std::cerr); }
