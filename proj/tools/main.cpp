#include <string>
#include <vector>

#include "driftknn/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return driftknn::cli_dispatch(std::move(args));
}
