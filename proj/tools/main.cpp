#include "rackforce/cli.hpp"

int main(int argc, char** argv) { return rackforce::cli::run_cli(argc, argv); }
