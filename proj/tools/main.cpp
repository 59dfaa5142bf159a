#include <iostream>
#include <string>
#include <vector>

#include "indfree/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return indfree::run_cli(args, std::cout, std::cerr);
}
