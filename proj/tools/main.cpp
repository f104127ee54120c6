#include "derange/cli.hpp"

int main(int argc, char** argv) { return derange::cli::run(argc, argv); }
