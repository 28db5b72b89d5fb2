#include <iostream>
#include <string>
#include <vector>

#include "upcycle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return upcycle::cli::run(args, std::cin, std::cout, std::cerr);
}
