#include <iostream>

#include "ternion/commands.hpp"

int main(int argc, char** argv) { return ternion::cli::run(argc, argv, std::cout, std::cerr); }
