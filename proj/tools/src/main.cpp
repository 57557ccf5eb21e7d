#include <iostream>

#include "toricstack_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return toricstack::cli::run(args, std::cout, std::cerr);
}
