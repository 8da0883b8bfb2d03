#include <nyprox/cli.hpp>

int main(int argc, char** argv) { return nyprox::cli::run(argc, argv); }
