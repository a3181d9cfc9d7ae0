#include "stakesim/cli.hpp"

int main(int argc, char** argv) { return stakesim::run_command(argc, argv); }
