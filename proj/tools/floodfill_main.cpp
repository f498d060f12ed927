#include <iostream>

#include "floodfill/cli.hpp"

int main(int argc, char** argv) { return floodfill::cli_main(argc, argv, std::cout, std::cerr); }
