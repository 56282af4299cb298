#include "cadyn/cli.hpp"

int main(int argc, char** argv) { return cadyn::cli::run_cli(argc, argv); }
