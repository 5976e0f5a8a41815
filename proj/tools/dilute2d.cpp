#include "commands.hpp"

int main(int argc, char** argv) { return dilute::cli::run(argc, argv); }
