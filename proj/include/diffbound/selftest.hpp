#ifndef DIFFBOUND_SELFTEST_HPP
#define DIFFBOUND_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace diffbound::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full acceptance suite.  The seed drives the randomized
/// cross-method criterion; everything else is deterministic.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20260811);

}  // namespace diffbound::selftest

#endif
