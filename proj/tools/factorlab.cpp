#include "factorlab/cli.hpp"

int main(int argc, char** argv) { return factorlab::cli::main_entry(argc, argv); }
