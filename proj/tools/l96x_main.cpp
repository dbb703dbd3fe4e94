#include <l96x/cli.hpp>

int main(int argc, char** argv) { return l96x::run_cli(argc, argv); }
