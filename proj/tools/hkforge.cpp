#include <iostream>
#include <string>
#include <vector>

#include "hkforge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hkforge::cli::run_command(args, std::cout, std::cerr);
}
