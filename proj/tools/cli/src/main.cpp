#include <iostream>

#include "su11/cli.hpp"

int main(int argc, char** argv) { return su11::cli::run({argv, argv + argc}, std::cout, std::cerr); }
