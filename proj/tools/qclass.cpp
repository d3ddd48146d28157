#include <iostream>

#include "qcc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto r = qcc::run_cli(args);
  std::cout << r.out;
  std::cerr << r.err;
  return r.code;
}
