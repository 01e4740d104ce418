#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "trapsim/experiments/config.hpp"

namespace trapsim::experiments {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    nlohmann::json measured;
    nlohmann::json thresholds;
    double seconds = 0.0;  // kept out of digests

    nlohmann::json to_json() const;  // without timing
};

inline constexpr int kCriterionCount = 12;

// Runs acceptance check id in 1..12 with its default budget, overridden by the
// explicit fields of cfg.
CriterionResult run_criterion(int id, const ExperimentConfig& cfg);

const std::vector<std::string>& suite_names();
const std::vector<int>& suite_criteria(const std::string& suite);

}  // namespace trapsim::experiments
