#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace istm::validation {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    std::vector<CheckResult> checks;
};

/// Runs the acceptance criteria with the given ids (all eight when empty). Progress lines
/// go to `log` when it is non-null.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {}, std::ostream* log = nullptr);

/// One "[PASS]/[FAIL] criterion" line per criterion followed by indented check details.
void print_report(std::ostream& out, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace istm::validation
