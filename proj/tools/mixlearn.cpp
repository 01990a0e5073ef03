#include "mixlearn/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return mixlearn::cli_dispatch(argc, argv, std::cout, std::cerr); }
