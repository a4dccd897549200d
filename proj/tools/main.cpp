// Apache License, Version 2.0, refer to LICENSE.txt

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return gas::cli::run(argc, argv, std::cout, std::cerr); }
