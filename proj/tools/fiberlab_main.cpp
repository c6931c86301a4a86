#include "fiberlab/cli.hpp"

int main(int argc, char** argv) { return fiberlab::run_cli(argc, argv); }
