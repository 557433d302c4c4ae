#include <string>
#include <vector>

#include "qnd/cli.hpp"

int main(int argc, char** argv) {
    return qnd::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
