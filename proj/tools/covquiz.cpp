#include <iostream>
#include <string>
#include <vector>

#include "covquiz/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return covquiz::cli::run(args, std::cout, std::cerr);
}
