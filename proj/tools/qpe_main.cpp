#include <iostream>

#include "qpesim/cli.hpp"

int main(int argc, char** argv) {
  return qpesim::cli_main(argc, argv, std::cout, std::cerr);
}
