#pragma once
#include <string>
#include <vector>

namespace crosscap {

// One row of the bundled verification suite.
struct CheckResult {
    std::string id;
    std::string expected;
    std::string got;
    double tolerance = 0.0;
    bool pass = false;
};

// Runs every bundled check whose id contains `only` (all of them when empty).
// `nodes` sets the base quadrature node count for the Gauss-Bonnet checks.
std::vector<CheckResult> run_verify(const std::string& only = "", int nodes = 32);

bool all_passed(const std::vector<CheckResult>& results);
std::string format_check_table(const std::vector<CheckResult>& results);

} // namespace crosscap
