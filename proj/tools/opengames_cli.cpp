#include <iostream>

#include "opengames/cli.hpp"

int main(int argc, char** argv) { return opengames::cli::run(argc, argv, std::cout, std::cerr); }
