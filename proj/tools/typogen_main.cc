#include <iostream>
#include <string>
#include <vector>

#include "typogen/cli.h"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return typogen::run(args, std::cin, std::cout, std::cerr);
}
