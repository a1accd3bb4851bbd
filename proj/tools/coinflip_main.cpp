#include "coinflip/report.hpp"

int main(int argc, char** argv) { return coinflip::cli_main(argc, argv); }
