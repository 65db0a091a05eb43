#pragma once

#include <string>
#include <vector>

namespace ich {
namespace verify {

// The acceptance suite: eleven criteria with pinned tolerances, each
// reporting one pass/fail line. tol_scale rescales every tolerance
// (test-only override; <1 tightens, >1 loosens); only_id = 0 runs all.
struct Options {
    double tol_scale = 1.0;
    int only_id = 0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

std::vector<CriterionResult> run_all(const Options& opts = {});
std::string format_table(const std::vector<CriterionResult>& results, double total_seconds);
bool all_passed(const std::vector<CriterionResult>& results);

} // namespace verify
} // namespace ich
