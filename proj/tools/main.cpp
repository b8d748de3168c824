#include <iostream>

#include "treecat/cli.hpp"

int main(int argc, char** argv) {
    return treecat::run_cli(argc, argv, std::cout, std::cerr);
}
