#include <iostream>

#include "infoax/cli.hpp"

int main(int argc, char** argv) { return infoax::cli::run(argc, argv, std::cout, std::cerr); }
