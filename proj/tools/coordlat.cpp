#include <iostream>

#include "coordlat/cli.hpp"

int main(int argc, char** argv) { return coordlat::cli::run(argc, argv, std::cout, std::cerr); }
