#include "trop/cli.hpp"

#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  std::string out;
  const int code = trop::run_cli(args, out);
  std::cout << out;
  return code;
}
