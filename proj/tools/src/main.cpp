#include "istm/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return istm::cli::run(argc, argv, std::cout, std::cerr); }
