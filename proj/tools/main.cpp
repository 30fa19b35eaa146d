#include <iostream>
#include <string>
#include <vector>

#include "qpicard/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qpicard::cli::run(args, std::cout, std::cerr);
}
