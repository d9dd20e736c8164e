#include <iostream>

#include "hypdisk/cli.hpp"

int main(int argc, char** argv) { return hypdisk::cli::run(argc, argv, std::cout, std::cerr); }
