#include <iostream>

#include "klb/cli/commands.hpp"

int main(int argc, char** argv) { return klb::cli::run(argc, argv, std::cout, std::cerr); }
