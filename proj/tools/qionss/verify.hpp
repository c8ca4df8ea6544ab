#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace qionss::cli {

struct VerifyOptions {
    // Test hook: builds every model with the sign of B flipped (B = +kappa while
    // C stays +kappa), which must break the all-pass and steady-state checks.
    bool flip_b_sign = false;
    unsigned threads = 0;
};

struct CheckResult {
    std::string name;
    double measured;
    double tolerance;
    bool passed;
    std::string detail;
};

std::vector<CheckResult> run_verify(const VerifyOptions& opts);

// One line per check plus a summary; returns true when every check passed.
bool print_report(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace qionss::cli
