#include <iostream>

#include "pclyap/cli.h"

int main(int argc, char** argv) {
  return pclyap::cli::run(argc, argv, std::cout, std::cerr);
}
