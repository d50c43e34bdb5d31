#include "noethops/cli.hpp"

int main(int argc, char** argv) { return noethops::run_cli(argc, argv); }
