#include "commands.hpp"

int main(int argc, char** argv) { return tailinv::cli::run(argc, argv); }
