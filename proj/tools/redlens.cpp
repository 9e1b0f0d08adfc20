#include "redlens/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return redlens::cli::run(argc, argv, std::cout, std::cerr);
}
