#include "formgate/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return formgate::cli::run(argc, argv, std::cout, std::cerr);
}
