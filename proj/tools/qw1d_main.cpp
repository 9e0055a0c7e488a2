#include <iostream>
#include <string>
#include <vector>

#include "qw1d/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qw1d::run_cli(args, std::cout, std::cerr);
}
