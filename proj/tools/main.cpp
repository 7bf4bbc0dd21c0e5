#include <iostream>

#include "dispatch.hpp"

int main(int argc, char** argv) {
  return rwrers::cli::dispatch(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
