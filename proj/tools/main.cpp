#include "cli.hpp"

int main(int argc, char** argv) { return spineneck::cli::run(argc, argv); }
