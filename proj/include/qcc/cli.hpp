#pragma once

#include <string>
#include <vector>

namespace qcc {

struct CliResult {
  int code = 0;  // 0 success, 1 validation failure, 2 inconclusive
  std::string out;
  std::string err;
};

// args excludes the program name.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace qcc
