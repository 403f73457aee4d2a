#include <iostream>

#include "dslab/cli.hpp"

int main(int argc, char** argv) {
  return dslab::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
