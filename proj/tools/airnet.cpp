#include <iostream>

#include "airnet/cli.hpp"

int main(int argc, char** argv) { return airnet::cli::run(argc, argv, std::cout, std::cerr); }
