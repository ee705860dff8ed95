#include "nbtrade/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return nbtrade::run_cli(argc, argv, std::cout, std::cerr);
}
