#include "klab/cli.hpp"

int main(int argc, char** argv) { return klab::run_cli(argc, argv); }
