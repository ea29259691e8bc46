#include "cs2d/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cs2d::cli::run(argc, argv, std::cout, std::cerr); }
