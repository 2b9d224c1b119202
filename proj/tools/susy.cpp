#include <iostream>

#include "susy/cli.hpp"

int main(int argc, char** argv) { return susy::cli_main(argc, argv, std::cout, std::cerr); }
