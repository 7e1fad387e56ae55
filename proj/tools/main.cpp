#include "nldet/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return nldet::cli::run(argc, argv, std::cout, std::cerr);
}
