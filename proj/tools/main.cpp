#include <iostream>
#include <string>
#include <vector>

#include "good/cli/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return good::cli::run(args, std::cout, std::cerr);
}
