#include <iostream>

#include "kohn/cli.hpp"

int main(int argc, char** argv) { return kohn::cli::run(argc, argv, std::cout, std::cerr); }
