#include "fwkit/cli.hpp"

int main(int argc, char** argv) { return fwkit::cli::main(argc, argv); }
