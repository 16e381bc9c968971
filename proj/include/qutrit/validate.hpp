#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qutrit {

struct SuiteResult {
    std::string name;
    int passed = 0;
    int failed = 0;
    std::string first_failure;  // serialized counterexample, empty when clean
};

// Cross-module invariant suites: closed forms vs the eigensolver
// oracle, partial-transpose involution, trace annihilation,
// interference monotonicity grids. `filter` selects one suite by name;
// empty runs all.
std::vector<SuiteResult> run_validation_suites(std::uint64_t seed,
                                               const std::string& filter = "");

}  // namespace qutrit
