#include <iostream>
#include <string>
#include <vector>

#include "srf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return srf::run_command(args, std::cout, std::cerr);
}
