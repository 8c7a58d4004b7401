#include <braidgrowth/cli.hpp>

#include <iostream>

int main(int argc, char** argv) { return braidgrowth::cli::run(argc, argv, std::cout, std::cerr); }
