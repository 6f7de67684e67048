#include "moravak/cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    auto result = moravak::cli::run(args);
    std::cout << result.output;
    std::cerr << result.error;
    return result.exit_code;
}
