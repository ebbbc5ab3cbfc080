#include <iostream>

#include "sscap/cli.hpp"

int main(int argc, char** argv) { return sscap::cli::run(argc, argv, std::cout, std::cerr); }
