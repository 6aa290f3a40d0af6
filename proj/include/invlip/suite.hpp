#pragma once

// Acceptance runs shared by `invlip suite` and the acceptance test binary.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace invlip {

struct SuiteOptions {
    std::uint64_t seed_first = 1;
    std::uint64_t seed_last = 100;
    unsigned workers = 0;  // 0: hardware concurrency
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // one-line summary
    double seconds = 0;
    /// Per-seed records. Contains no timing, so it is reproducible byte for byte.
    nlohmann::json report;
};

/// Criteria 1..10. Throws DomainError on an unknown id.
CriterionResult run_criterion(int id, const SuiteOptions& options);
std::vector<CriterionResult> run_suite(const SuiteOptions& options, const std::vector<int>& ids = {});

/// "1..100" or "7" into an inclusive range.
SuiteOptions parse_seed_range(const std::string& text, SuiteOptions base = {});

}  // namespace invlip
