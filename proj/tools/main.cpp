#include "geosteer/cli.hpp"

int main(int argc, char** argv) { return geosteer::run_cli(argc, argv); }
