#include "decaykit/runner.hpp"

int main(int argc, char** argv) { return decaykit::cli::main_entry(argc, argv); }
