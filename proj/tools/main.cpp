#include <iostream>

#include "levy_spectra/cli.hpp"

int main(int argc, char** argv) { return levy_spectra::run_cli(argc, argv, std::cout, std::cerr); }
