#include "gcife/cli.hpp"

int main(int argc, char** argv) { return gcife::cli_main(argc, argv); }
