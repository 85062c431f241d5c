#include "urel/cli.hpp"

int main(int argc, char** argv) { return urel::cli::main_entry(argc, argv); }
