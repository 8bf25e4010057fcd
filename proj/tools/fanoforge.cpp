#include <iostream>

#include <fanoforge/cli.hpp>

int main(int argc, char** argv)
{
    return fanoforge::cli::run(argc, argv, std::cout, std::cerr);
}
