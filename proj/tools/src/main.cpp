#include <iostream>

#include "scalardyn_cli/commands.hpp"

int main(int argc, char** argv) { return scalardyn::cli::run(argc, argv, std::cout, std::cerr); }
