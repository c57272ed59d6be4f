#include <iostream>

#include "dessin/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return dessin::cli::run(args, std::cout, std::cerr);
}
