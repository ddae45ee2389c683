#include <iostream>
#include <string>
#include <vector>

#include "lrmp_cli/cli.hpp"

int main(int argc, char** argv) {
  return lrmp::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
