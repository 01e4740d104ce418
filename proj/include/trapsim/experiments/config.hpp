#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace trapsim::experiments {

// Unset optionals mean "use the default of the command or criterion".
struct ExperimentConfig {
    std::optional<double> beta;
    std::vector<double> alphas;
    std::optional<std::int64_t> n;
    std::optional<std::int64_t> replicas;
    std::uint64_t seed = 20240917;
    double horizon = 1.0;  // right end of trajectory grids
    std::int64_t grid_points = 200;
    std::vector<double> deltas;
    std::optional<double> dt;
    std::vector<double> pis;
    std::vector<double> thetas;
    std::vector<std::string> suites;
    std::string out = "trapsim-out";
    int threads = 0;

    // Sections [model] [run] [grid] [limit] [aging] [report]; lists are comma separated.
    static ExperimentConfig from_ini(std::istream& is);
    static ExperimentConfig from_ini_file(const std::string& path);
    void validate() const;
    nlohmann::json to_json() const;
};

std::vector<double> parse_double_list(const std::string& text);

// Rejects alpha outside the regime an experiment is defined for.
void require_alpha_below_one(double alpha, const std::string& what);
void require_alpha_at_least_one(double alpha, const std::string& what);

}  // namespace trapsim::experiments
