#include <iostream>

#include "webgeom/cli.hpp"

int main(int argc, char** argv) { return webgeom::run_cli(argc, argv, std::cout, std::cerr); }
