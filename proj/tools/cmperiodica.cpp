#include "cmperiodica/cli.hpp"

int main(int argc, char** argv) { return cmperiodica::cli::main(argc, argv); }
