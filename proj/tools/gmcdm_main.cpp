#include <iostream>
#include <string>
#include <vector>

#include "gmcdm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return gmcdm::run_cli(args, std::cout, std::cerr);
}
