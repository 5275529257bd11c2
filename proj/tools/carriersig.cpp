#include <iostream>

#include "carriersig/cli.hpp"

int main(int argc, char** argv) {
  return carriersig::cli::run(argc, argv, std::cout, std::cerr);
}
