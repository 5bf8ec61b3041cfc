#include "bnsynth/cli.hpp"

int main(int argc, char** argv) { return bnsynth::cli::cli_main(argc, argv); }
