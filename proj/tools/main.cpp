#include <iostream>
#include <string>
#include <vector>

#include "mapflow/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mapflow::app::run(std::move(args), std::cout, std::cerr);
}
