#include <iostream>

#include "sblab/cli.hpp"

int main(int argc, char** argv) {
  return sblab::parse_and_dispatch(argc, argv, std::cout, std::cerr);
}
