#include <iostream>

#include "contra/cli.hpp"

int main(int argc, char** argv) { return contra::cli::run(argc, argv, std::cout, std::cerr); }
