#include "flv/cli/commands.hpp"

int main(int argc, char** argv) { return flv::cli::run(argc, argv); }
