#include "ssq/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return ssq::run_cli(argc, argv, std::cout, std::cerr); }
