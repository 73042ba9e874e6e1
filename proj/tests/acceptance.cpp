#include "vaxfront/verification.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    vaxfront::AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) {
        options.only.emplace_back(argv[i]);
    }
    bool all = true;
    for (const auto& r : vaxfront::run_acceptance(options)) {
        std::cout << vaxfront::format_result(r) << std::endl;
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
