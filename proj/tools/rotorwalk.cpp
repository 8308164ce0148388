#include "rotor/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return rotor::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
