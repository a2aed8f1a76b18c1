// Seeded property suites behind the `verify` subcommand: randomized checks
// of the semigroup engines, the cyclicity indices, the alpha representation,
// and the reconstruction pipeline.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace strobo {

struct CheckResult {
    std::string name;
    bool passed = false;
    int cases = 0;
    std::string detail;  // first failure description, empty when passed
};

std::vector<CheckResult> verify_semigroup(std::uint64_t seed);
std::vector<CheckResult> verify_cyclicity(std::uint64_t seed);
std::vector<CheckResult> verify_alpha(std::uint64_t seed);
std::vector<CheckResult> verify_tomography(std::uint64_t seed);
std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed);

}  // namespace strobo
