#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace zf {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

using CriterionFn = std::function<CriterionResult()>;

// The thirteen acceptance criteria, in order. Each runs standalone.
std::vector<std::pair<std::string, CriterionFn>> acceptance_criteria();

// Runs all criteria, printing one pass/fail line each; returns failure count.
int run_acceptance(std::ostream& os);

}  // namespace zf
