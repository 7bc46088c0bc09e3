#include <iostream>

#include "vecmax/cli.hpp"

int main(int argc, char** argv) {
    vecmax::cli::RunConfig config;
    if (auto code = vecmax::cli::parse_args(argc, argv, config, std::cout, std::cerr)) return *code;
    return vecmax::cli::run(config, std::cout);
}
