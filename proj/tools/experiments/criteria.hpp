#pragma once

#include <string>
#include <vector>

namespace localize::tools {

struct CriterionCheck {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    double time_limit_seconds = 0.0;
    double elapsed_seconds = 0.0;
    std::vector<CriterionCheck> checks;
    bool pass = false;          // every check passes (the time limit is judged separately)
    bool within_time = false;
};

constexpr int kCriterionCount = 8;

CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

// "PASS  3  Mathai-Quillen flatness  (21 checks, 3.1 s / 120 s)"
std::string verdict_line(const CriterionResult& result);

}  // namespace localize::tools
