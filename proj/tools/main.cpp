#include <iostream>

#include "dsn/cli.hpp"

int main(int argc, char** argv) {
  return dsn::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
