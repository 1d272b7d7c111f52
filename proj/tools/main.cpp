#include <iostream>
#include <string>
#include <vector>

#include "urnnet/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return urnnet::cli::run(args, std::cout, std::cerr);
}
