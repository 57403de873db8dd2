#include <iostream>
#include <string>
#include <vector>

#include "palmpat/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return palmpat::cli::run(args, std::cout, std::cerr);
}
