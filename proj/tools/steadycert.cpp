#include "steadycert/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return steadycert::run_cli(std::move(args));
}
