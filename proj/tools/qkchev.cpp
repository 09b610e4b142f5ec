#include <iostream>

#include "qkchev/cli.hpp"

int main(int argc, char** argv) { return qkchev::cli::main_entry(argc, argv, std::cout, std::cerr); }
