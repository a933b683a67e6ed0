#include <string>
#include <vector>

#include "cli_runner.hpp"

int main(int argc, char** argv) {
  return coprime::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
