#include <iostream>

#include "octofc/cli.hpp"

int main(int argc, char** argv) { return octofc::run_cli(argc, argv, std::cout, std::cerr); }
