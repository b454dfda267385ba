// main.cpp — spinbatt CLI entry point.

#include "spinbatt/cli.hpp"

int main(int argc, char** argv) { return spinbatt::cli::run_cli(argc, argv); }
