#include "specres/cli.hpp"

int main(int argc, char** argv) {
    return specres::main_entry(argc, argv);
}
