#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return cubasquare::run_cli(argc, argv, std::cout, std::cerr);
}
