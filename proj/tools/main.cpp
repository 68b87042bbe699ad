#include <iostream>

#include "zhakit/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return zhakit::run_cli(args, std::cout, std::cerr);
}
