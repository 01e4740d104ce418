#include "trapsim/experiments/commands.hpp"

#include "trapsim/experiments/criteria.hpp"
#include "trapsim/experiments/manifest.hpp"

namespace trapsim::experiments {

nlohmann::json cmd_verify(const std::string& suite, const ExperimentConfig& cfg) {
    const auto& ids = suite_criteria(suite);
    nlohmann::json out = {{"suite", suite}, {"pass", true}, {"criteria", nlohmann::json::array()}, {"timing", nlohmann::json::object()}};
    for (int id : ids) {
        const CriterionResult r = run_criterion(id, cfg);
        out["criteria"].push_back(r.to_json());
        out["timing"][std::to_string(id)] = r.seconds;
        out["pass"] = out["pass"].get<bool>() && r.pass;
    }
    return out;
}

std::string report_digest(const nlohmann::json& report) {
    nlohmann::json stable = {{"config", report.at("config")}, {"suites", report.at("suites")}};
    for (auto& [name, verdict] : stable["suites"].items()) verdict.erase("timing");
    return sha256_hex(stable.dump());
}

nlohmann::json cmd_report(const ExperimentConfig& cfg) {
    cfg.validate();
    for (const auto& s : cfg.suites) suite_criteria(s);  // reject unknown names before any work
    nlohmann::json report = {{"config", cfg.to_json()}, {"code_version", code_version()}, {"suites", nlohmann::json::object()}};
    bool pass = true;
    for (const auto& s : cfg.suites) {
        report["suites"][s] = cmd_verify(s, cfg);
        pass = pass && report["suites"][s]["pass"].get<bool>();
    }
    report["pass"] = pass;
    report["digest"] = report_digest(report);
    return report;
}

}  // namespace trapsim::experiments
