#include "zlrr/cli.hpp"

int main(int argc, char** argv) { return zlrr::run_cli(argc, argv); }
