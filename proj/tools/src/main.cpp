#include "nilstab/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return nilstab::cli::run(argc, argv, std::cout, std::cerr);
}
