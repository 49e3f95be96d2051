#include <string>
#include <vector>

#include "mweyl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return mweyl::run_cli(args);
}
