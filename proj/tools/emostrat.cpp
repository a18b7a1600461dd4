#include <iostream>

#include "emostrat/cli.hpp"

int main(int argc, char** argv) {
  return emostrat::cli::main(argc, argv, std::cout, std::cerr);
}
