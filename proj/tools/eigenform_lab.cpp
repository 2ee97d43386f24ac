#include <iostream>
#include <string>
#include <vector>

#include "eigenform/cli.hpp"

int main(int argc, char** argv) {
  return eigenform::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
