#include <iostream>

#include "undom/cli.hpp"

int main(int argc, char** argv) { return undom::dispatch(argc, argv, std::cout, std::cerr); }
