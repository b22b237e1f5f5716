#include "ifront/cli.hpp"

int main(int argc, char** argv) { return ifront::cli::main_cli(argc, argv); }
