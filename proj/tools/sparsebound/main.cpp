#include <iostream>
#include <string>
#include <vector>

#include "sparsebound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sparsebound::cli::run(args, std::cout, std::cerr);
}
