#include <string>
#include <vector>

#include "sifs/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sifs::cli::run(args);
}
