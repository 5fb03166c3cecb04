#include <iostream>

#include "bandod/cli.hpp"

int main(int argc, char** argv) {
  return bandod::cli::run(argc, argv, std::cout, std::cerr);
}
