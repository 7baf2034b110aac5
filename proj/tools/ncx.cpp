#include "ncx/cli.hpp"

int main(int argc, char** argv) { return ncx::cli::main(argc, argv); }
