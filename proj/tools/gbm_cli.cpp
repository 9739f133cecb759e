#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return gbm::cli::run(argc, argv, std::cout, std::cerr); }
