#include <iostream>

#include "hts/cli_io.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hts::run_command(args, std::cout, std::cerr);
}
