#include <iostream>

#include <stmwis/cli.hpp>

int main(int argc, char** argv) { return stmwis::run_command(argc, argv, std::cout, std::cerr); }
