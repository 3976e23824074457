#include <iostream>

#include "evgeom/cli.hpp"

int main(int argc, char** argv) {
    return evgeom::run_cli(argc, argv, std::cout, std::cerr);
}
