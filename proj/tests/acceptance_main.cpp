// Runs the acceptance criteria; extra arguments go to `levy_spectra acceptance`.
#include <iostream>
#include <vector>

#include "levy_spectra/cli.hpp"

int main(int argc, char** argv) {
    std::vector<const char*> args{"levy_spectra", "acceptance"};
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    return levy_spectra::run_cli(static_cast<int>(args.size()), args.data(), std::cout, std::cerr);
}
