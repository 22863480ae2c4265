#include <iostream>

#include "aligneval/cli.h"

int main(int argc, char** argv) {
  return aligneval::cli::run(argc, argv, std::cout, std::cerr);
}
