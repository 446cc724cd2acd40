#include "pslab/cli.hpp"

int main(int argc, char** argv) { return pslab::cli::run_main(argc, argv); }
