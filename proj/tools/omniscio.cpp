#include "omniscio/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return omniscio::run_cli(argc, argv, std::cout, std::cerr); }
