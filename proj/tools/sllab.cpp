#include <iostream>
#include <string>
#include <vector>

#include "sllab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sllab::cli::run(args, std::cout, std::cerr);
}
