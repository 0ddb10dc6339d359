#include "nqsim/cli.hpp"

int main(int argc, char** argv) { return nqsim::run_cli(argc, argv); }
