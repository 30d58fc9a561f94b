#include <iostream>

#include "udcdma/cli.hpp"

int main(int argc, char** argv) { return udcdma::cli_main(argc, argv, std::cout, std::cerr); }
