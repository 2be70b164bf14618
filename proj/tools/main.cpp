#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dcurve::cli::cli_main(argc, argv, std::cout, std::cerr); }
