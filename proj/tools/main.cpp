#include "multisir/cli.hpp"

int main(int argc, char** argv) { return multisir::cli_main(argc, argv); }
