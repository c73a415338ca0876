#include "cli.hpp"

int main(int argc, char** argv) { return skr::main_entry(argc, argv, std::cout, std::cerr); }
