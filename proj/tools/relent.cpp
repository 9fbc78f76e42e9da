#include <iostream>

#include "relent/cli.hpp"

int main(int argc, char** argv) { return relent::cli::run(argc, argv, std::cout, std::cerr); }
