#include <string>
#include <vector>

#include "run_config.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dfosc::cli::run_cli(args);
}
