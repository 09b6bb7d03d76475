#include "sublin/pipeline.hpp"

int main(int argc, char** argv) { return sublin::cli_main(argc, argv); }
