#include "echkit/cli.hpp"

int main(int argc, char** argv) {
    return echkit::cli::run(argc, argv);
}
