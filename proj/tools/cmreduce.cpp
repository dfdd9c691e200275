#include <iostream>

#include "cmreduce/cli.hpp"

int main(int argc, char** argv) { return cmreduce::run_cli(argc, argv, std::cout, std::cerr); }
