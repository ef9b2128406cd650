#include <iostream>

#include "omegact/cli.hpp"

int main(int argc, char** argv)
{
  return omegact::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
