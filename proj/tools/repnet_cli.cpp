#include "repnet/scenario.hpp"

int main(int argc, char** argv) { return repnet::cli_main(argc, argv); }
