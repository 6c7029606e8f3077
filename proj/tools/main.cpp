#include <iostream>

#include "wroot/cli.hpp"

int main(int argc, char** argv)
{
  return wroot::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
