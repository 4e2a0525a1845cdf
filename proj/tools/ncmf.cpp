#include <iostream>
#include <string>
#include <vector>

#include "ncmf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ncmf::dispatch(args, std::cout, std::cerr);
}
