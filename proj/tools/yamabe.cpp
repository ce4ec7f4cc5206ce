#include "yamabe/cli/commands.hpp"

int main(int argc, char** argv) { return yamabe::cli::run_cli(argc, argv); }
