#include <iostream>

#include "fracsub/cli/commands.hpp"

int main(int argc, char** argv) { return fracsub::cli::run(argc, argv, std::cout, std::cerr); }
