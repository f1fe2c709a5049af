#include "commands.hpp"

int main(int argc, char** argv) { return sppkit::cli::run(argc, argv); }
