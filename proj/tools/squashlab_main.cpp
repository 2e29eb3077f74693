#include "squashlab/cli.hpp"

int main(int argc, char** argv) { return squashlab::cli::run(argc, argv); }
