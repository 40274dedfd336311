#include <iostream>
#include <string>
#include <vector>

#include "medlex/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return medlex::cli::run(args, std::cout, std::cerr);
}
