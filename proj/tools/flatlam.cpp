#include <iostream>

#include "flatlam/cli.hpp"

int main(int argc, char** argv) { return flatlam::cli::run(argc, argv, std::cout, std::cerr); }
