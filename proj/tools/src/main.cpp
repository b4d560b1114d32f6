#include <iostream>

#include "qpcalc_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qpcalc::cli::run(args, std::cout, std::cerr);
}
