#include <entspec/cli.hpp>

int main(int argc, char** argv) { return entspec::cli::run(argc, argv); }
