#include "smoothspec/cli.hpp"

int main(int argc, char** argv) { return smoothspec::run_cli(argc, argv); }
