#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nsalpha {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // measured worst ratio / deviation
};

// Operator-identity, filter-bound and noise-assumption checks on random
// fields at N = 64. Pure function of the seed.
std::vector<CheckResult> verify_operators(std::uint64_t seed = 20240811);

}  // namespace nsalpha
