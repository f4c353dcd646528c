#include <biquad/cli.hpp>

int main(int argc, char** argv) { return biquad::cli_main(argc, argv); }
