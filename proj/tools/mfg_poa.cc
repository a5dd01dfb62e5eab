#include <iostream>

#include "mfgpoa/cli.h"

int main(int argc, char** argv) {
  return mfgpoa::RunCli(argc, argv, std::cout, std::cerr);
}
