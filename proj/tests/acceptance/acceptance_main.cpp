// Acceptance gate for the laboratory. Each criterion is a self-contained
// check with its tolerances pinned in code; the binary runs exactly one of
// them (argv[1] in 1..8), prints a single PASS/FAIL line and exits 0 or 1.

#include <cstdio>
#include <cstdlib>
#include <exception>

#include "acceptance/criteria.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s CRITERION(1..8)\n", argv[0]);
        return 2;
    }
    const int id = std::atoi(argv[1]);
    using Check = acceptance::Outcome (*)();
    static constexpr Check kChecks[8] = {
        acceptance::criterion_1, acceptance::criterion_2, acceptance::criterion_3,
        acceptance::criterion_4, acceptance::criterion_5, acceptance::criterion_6,
        acceptance::criterion_7, acceptance::criterion_8,
    };
    if (id < 1 || id > 8) {
        std::fprintf(stderr, "no such criterion: %s\n", argv[1]);
        return 2;
    }

    acceptance::Outcome out;
    try {
        out = kChecks[id - 1]();
    } catch (const std::exception& e) {
        out.pass = false;
        out.detail = std::string("unhandled exception: ") + e.what();
    }
    std::printf("criterion %d: %s - %s\n", id, out.pass ? "PASS" : "FAIL", out.detail.c_str());
    std::fflush(stdout);
    return out.pass ? 0 : 1;
}
