#include <iostream>

#include "ntil/cli.hpp"

int main(int argc, char** argv) {
  return ntil::run_cli(argc, argv, std::cout, std::cerr);
}
