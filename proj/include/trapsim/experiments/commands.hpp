#pragma once

#include <string>

#include <json.hpp>

#include "trapsim/experiments/config.hpp"

namespace trapsim::experiments {

// {"suite", "pass", "criteria": [...], "timing": {...}}
nlohmann::json cmd_verify(const std::string& suite, const ExperimentConfig& cfg);

// Runs cfg.suites and aggregates them. The digest covers config and verdicts
// but not timing, so it is stable across re-runs with the same seed.
nlohmann::json cmd_report(const ExperimentConfig& cfg);

std::string report_digest(const nlohmann::json& report);

}  // namespace trapsim::experiments
