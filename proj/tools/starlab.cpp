#include "starlab/cli.hpp"

int main(int argc, char** argv) { return starlab::cli::run(argc, argv); }
