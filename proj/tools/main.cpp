#include "biinterp/cli.hpp"

int main(int argc, char** argv) { return biinterp::run_cli(argc, argv); }
