#include <iostream>

#include "rcenter/cli.hpp"

int main(int argc, char** argv) { return rcenter::run_cli(argc, argv, std::cout, std::cerr); }
