#pragma once

// Self-verification suite: closed-form identities, oracle cross-checks, and the
// catalogued worked examples, grouped into eleven criteria.  Every check returns
// a result instead of throwing, so a failing identity is reported with a
// self-contained diagnostic rather than aborting the run.

#include <string>
#include <vector>

namespace focklab {

struct CheckResult {
    std::string id;     // stable identifier, e.g. "c3.displayed-corners"
    std::string name;   // human-readable statement of the property
    bool pass = false;
    std::string detail; // computed values; on failure, why the computation is right
    double seconds = 0.0;
};

// Run the checks of one criterion (k in 1..11).
std::vector<CheckResult> run_criterion(int k);

// Run criteria 1..11 in order.
std::vector<CheckResult> run_verification();

// 0 when every check passed, 4 otherwise.
int verification_exit_code(const std::vector<CheckResult>& results);

} // namespace focklab
