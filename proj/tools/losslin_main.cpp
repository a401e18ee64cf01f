#include <iostream>
#include <string>
#include <vector>

#include "losslin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return losslin::cli::run(args, std::cout, std::cerr);
}
