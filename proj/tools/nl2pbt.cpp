#include "nl2pbt/cli.hpp"

int main(int argc, char** argv) { return nl2pbt::run(argc, argv); }
