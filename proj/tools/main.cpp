#include "mdepth/cli.hpp"

int main(int argc, char** argv) { return mdepth::run_cli(argc, argv); }
