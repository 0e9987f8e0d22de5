#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace manasim::verify {

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    std::uint64_t seed = 0x5eed5eedULL;  // fixed: the suite is deterministic
};

/// The end-to-end verification suite: phase-space algebra, stabilizer zeros,
/// family-formula equivalence, both quadrature oracles, the lambda^4
/// consistency scaling, the sweep/optimizer curve, and the selection rules.
std::vector<CriterionResult> run_all(const VerifyOptions& options = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace manasim::verify
