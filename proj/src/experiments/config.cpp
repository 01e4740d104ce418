#include "trapsim/experiments/config.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace trapsim::experiments {

namespace pt = boost::property_tree;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<std::string> parts;
    boost::split(parts, text, boost::is_any_of(",; "), boost::token_compress_on);
    std::vector<double> out;
    for (auto& p : parts) {
        boost::trim(p);
        if (p.empty()) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(p, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != p.size()) throw std::invalid_argument("config: not a number: '" + p + "'");
        out.push_back(v);
    }
    return out;
}

ExperimentConfig ExperimentConfig::from_ini(std::istream& is) {
    pt::ptree tree;
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    static const std::vector<std::string> known = {
        "model.beta", "model.alpha",   "model.n",      "run.replicas", "run.seed",   "run.threads",
        "run.out",    "grid.horizon",  "grid.points",  "limit.delta",  "limit.dt",   "aging.pi",
        "aging.theta", "report.suites"};
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw std::invalid_argument("config: key outside a section: " + section);
        for (const auto& kv : body) {
            const std::string key = section + "." + kv.first;
            if (std::find(known.begin(), known.end(), key) == known.end())
                throw std::invalid_argument("config: unknown key " + key);
        }
    }
    ExperimentConfig c;
    try {
        if (auto v = tree.get_optional<double>("model.beta")) c.beta = *v;
        if (auto v = tree.get_optional<std::string>("model.alpha")) c.alphas = parse_double_list(*v);
        if (auto v = tree.get_optional<std::int64_t>("model.n")) c.n = *v;
        if (auto v = tree.get_optional<std::int64_t>("run.replicas")) c.replicas = *v;
        if (auto v = tree.get_optional<std::uint64_t>("run.seed")) c.seed = *v;
        if (auto v = tree.get_optional<int>("run.threads")) c.threads = *v;
        if (auto v = tree.get_optional<std::string>("run.out")) c.out = *v;
        if (auto v = tree.get_optional<double>("grid.horizon")) c.horizon = *v;
        if (auto v = tree.get_optional<std::int64_t>("grid.points")) c.grid_points = *v;
        if (auto v = tree.get_optional<std::string>("limit.delta")) c.deltas = parse_double_list(*v);
        if (auto v = tree.get_optional<double>("limit.dt")) c.dt = *v;
        if (auto v = tree.get_optional<std::string>("aging.pi")) c.pis = parse_double_list(*v);
        if (auto v = tree.get_optional<std::string>("aging.theta")) c.thetas = parse_double_list(*v);
        if (auto v = tree.get_optional<std::string>("report.suites")) {
            boost::split(c.suites, *v, boost::is_any_of(", "), boost::token_compress_on);
            c.suites.erase(std::remove(c.suites.begin(), c.suites.end(), std::string()), c.suites.end());
        }
    } catch (const pt::ptree_bad_data& e) {
        throw std::invalid_argument(std::string("config: bad value: ") + e.what());
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_ini_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    return from_ini(in);
}

void ExperimentConfig::validate() const {
    if (beta && !(*beta > 1.0 && *beta <= 2.0)) throw std::invalid_argument("config: beta must lie in (1,2]");
    for (double a : alphas)
        if (!(a > 0.0 && a <= 2.0)) throw std::invalid_argument("config: alpha must lie in (0,2]");
    if (n && *n < 1) throw std::invalid_argument("config: n must be at least 1");
    if (replicas && *replicas < 1) throw std::invalid_argument("config: replicas must be at least 1");
    if (!(horizon > 0.0)) throw std::invalid_argument("config: horizon must be positive");
    if (grid_points < 1) throw std::invalid_argument("config: grid points must be at least 1");
    for (double d : deltas)
        if (!(d > 0.0)) throw std::invalid_argument("config: delta must be positive");
    if (dt && !(*dt > 0.0)) throw std::invalid_argument("config: dt must be positive");
    for (double p : pis)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("config: pi must lie in [0,1]");
    for (double t : thetas)
        if (!(t > 0.0)) throw std::invalid_argument("config: theta must be positive");
    if (threads < 0) throw std::invalid_argument("config: threads must be nonnegative");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["beta"] = beta ? nlohmann::json(*beta) : nlohmann::json(nullptr);
    j["alpha"] = alphas;
    j["n"] = n ? nlohmann::json(*n) : nlohmann::json(nullptr);
    j["replicas"] = replicas ? nlohmann::json(*replicas) : nlohmann::json(nullptr);
    j["seed"] = seed;
    j["horizon"] = horizon;
    j["grid_points"] = grid_points;
    j["delta"] = deltas;
    j["dt"] = dt ? nlohmann::json(*dt) : nlohmann::json(nullptr);
    j["pi"] = pis;
    j["theta"] = thetas;
    j["suites"] = suites;
    j["out"] = out;
    j["threads"] = threads;
    return j;
}

void require_alpha_below_one(double alpha, const std::string& what) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument(what + ": alpha must lie in (0,1)");
}

void require_alpha_at_least_one(double alpha, const std::string& what) {
    if (!(alpha >= 1.0 && alpha <= 2.0)) throw std::invalid_argument(what + ": alpha must lie in [1,2]");
}

}  // namespace trapsim::experiments
