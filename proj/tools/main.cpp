#include <iostream>

#include "gdecor/cli.hpp"

int main(int argc, char** argv)
{
    return gdecor::cli::run(argc, argv, std::cout, std::cerr);
}
