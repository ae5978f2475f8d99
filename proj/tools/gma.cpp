#include <iostream>

#include "gma/cli/app.hpp"

int main(int argc, char** argv) {
  return gma::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
