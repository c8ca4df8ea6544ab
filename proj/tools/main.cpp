#include <iostream>

#include "qionss/commands.hpp"

int main(int argc, char** argv) { return qionss::cli::run(argc, argv, std::cout, std::cerr); }
