#include "iontide/scenarios.hpp"

int main(int argc, char** argv) { return iontide::scenarios::cli_main(argc, argv); }
