#include <iostream>

#include "endokit/cli.hpp"

int main(int argc, char** argv) {
  return endokit::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
