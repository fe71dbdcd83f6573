#include <iostream>

#include "wordperc/cli.hpp"

int main(int argc, char** argv) {
  return wordperc::parse_and_dispatch(argc, argv, std::cout, std::cerr);
}
