#include <iostream>
#include <string>
#include <vector>

#include "radial_gate/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return radial_gate::cli::run(args, std::cout, std::cerr);
}
