// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Also reachable as `diffbound selftest`.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "diffbound/selftest.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20260811;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) {
            seed = std::strtoull(argv[++i], nullptr, 10);
        }
    }
    const auto results = diffbound::selftest::run_acceptance(seed);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.seconds, r.detail.empty() ? "" : " -- ",
                    r.detail.c_str());
        all = all && r.pass;
    }
    if (!all) {
        std::printf("acceptance: FAILED\n");
        return 1;
    }
    std::printf("acceptance: all %zu criteria passed\n", results.size());
    return 0;
}
