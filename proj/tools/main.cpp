#include "cli.hpp"

int main(int argc, char** argv) { return oamw::cli::run(argc, argv); }
