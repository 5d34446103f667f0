#include <iostream>
#include <string>
#include <vector>

#include "revive/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return revive::cli::run(args, std::cout, std::cerr);
}
