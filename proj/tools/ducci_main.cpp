#include <iostream>

#include "ducci/cli.hpp"

int main(int argc, char** argv) {
  return ducci::cli::run(argc, argv, std::cout, std::cerr);
}
