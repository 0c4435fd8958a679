#include "cli.hpp"

int main(int argc, char** argv) { return wllab::cli::run(argc, argv); }
