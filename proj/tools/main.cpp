#include <string>
#include <vector>

#include "stocksig/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stocksig::run_cli(args);
}
