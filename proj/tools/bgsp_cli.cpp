#include <string>
#include <vector>

#include "bgsp/io.hpp"

int main(int argc, char** argv) {
  return bgsp::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
