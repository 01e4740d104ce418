#include "trapsim/walk.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "trapsim/errors.hpp"

namespace trapsim {

std::int64_t LocalTimeMap::at(std::int64_t site) const {
    auto it = counts.find(site);
    return it == counts.end() ? 0 : it->second;
}

std::int64_t LocalTimeMap::total() const {
    std::int64_t s = 0;
    for (const auto& kv : counts) s += kv.second;
    return s;
}

WalkPath run_embedded_walk(std::int64_t n, const StepLaw& law, RandomStream& rng) {
    if (n < 0) throw std::invalid_argument("walk: n must be nonnegative");
    WalkPath p;
    p.law = law;
    extend_walk(p, n, rng);
    return p;
}

void extend_walk(WalkPath& path, std::int64_t total_steps, RandomStream& rng) {
    if (total_steps <= path.steps()) return;
    path.positions.reserve(static_cast<std::size_t>(total_steps) + 1);
    std::int64_t x = path.positions.back();
    for (std::int64_t k = path.steps(); k < total_steps; ++k) {
        x += sample_step_increment(path.law, rng);
        path.positions.push_back(x);
    }
}

WalkPath walk_from_increments(const StepLaw& law, const std::vector<std::int64_t>& increments) {
    WalkPath p;
    p.law = law;
    for (auto e : increments) p.positions.push_back(p.positions.back() + e);
    return p;
}

LocalTimeMap local_time(const WalkPath& path, std::int64_t up_to) {
    if (up_to < 0 || up_to > path.steps()) throw HorizonExceeded("local time: up_to outside the path");
    LocalTimeMap m;
    m.up_to = up_to;
    for (std::int64_t k = 0; k <= up_to; ++k) ++m.counts[path.positions[static_cast<std::size_t>(k)]];
    return m;
}

std::int64_t visits(const WalkPath& path, std::int64_t up_to, std::int64_t site) {
    if (up_to < 0 || up_to > path.steps()) throw HorizonExceeded("visits: up_to outside the path");
    std::int64_t c = 0;
    for (std::int64_t k = 0; k <= up_to; ++k) c += path.positions[static_cast<std::size_t>(k)] == site;
    return c;
}

ScalingBundle scaling_sequences(std::int64_t n, double beta, double alpha) {
    if (n < 1) throw std::invalid_argument("scaling: n must be at least 1");
    if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("scaling: beta must lie in (1,2]");
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("scaling: alpha must lie in (0,2]");
    ScalingBundle s;
    s.n = n;
    s.beta = beta;
    s.alpha = alpha;
    const double nd = static_cast<double>(n);
    s.d = std::pow(nd, 1.0 / beta);
    s.r = nd / s.d;
    s.b = std::pow(s.d, 1.0 / alpha);
    s.a = s.r * s.b;
    s.c = alpha == 1.0 ? nd * std::log(nd) : nd;
    return s;
}

std::int64_t floor_index(double n, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("time must be nonnegative");
    return static_cast<std::int64_t>(std::floor(n * t));
}

double rescaled_walk_at(const WalkPath& path, const ScalingBundle& sb, double t) {
    const std::int64_t k = floor_index(static_cast<double>(sb.n), t);
    if (k > path.steps()) throw HorizonExceeded("rescaled walk: n t beyond the path, extend n");
    return static_cast<double>(path.positions[static_cast<std::size_t>(k)]) / sb.d;
}

double rescaled_local_time(const LocalTimeMap& ltm, const ScalingBundle& sb, double t, double x) {
    const std::int64_t k = floor_index(static_cast<double>(sb.n), t);
    if (k > ltm.up_to) throw HorizonExceeded("rescaled local time: n t beyond the map");
    if (k != ltm.up_to) throw std::invalid_argument("rescaled local time: map built for a different time");
    const auto site = static_cast<std::int64_t>(std::floor(x * sb.d));
    return static_cast<double>(ltm.at(site)) / sb.r;
}

double rescaled_local_time(const WalkPath& path, const ScalingBundle& sb, double t, double x) {
    const std::int64_t k = floor_index(static_cast<double>(sb.n), t);
    if (k > path.steps()) throw HorizonExceeded("rescaled local time: n t beyond the path");
    const auto site = static_cast<std::int64_t>(std::floor(x * sb.d));
    return static_cast<double>(visits(path, k, site)) / sb.r;
}

StableConstants stable_norm_constants(double beta, double c_plus, double c_minus) {
    if (!(beta > 1.0 && beta < 2.0)) throw std::invalid_argument("stable constants: beta must lie in (1,2)");
    if (!(c_plus >= 0.0 && c_minus >= 0.0 && c_plus + c_minus > 0.0))
        throw std::invalid_argument("stable constants: tail weights must be nonnegative and not both zero");
    const double sum = c_plus + c_minus;
    const double c = -sum * std::tgamma(2.0 - beta) / (beta - 1.0) * std::cos(std::numbers::pi * beta / 2.0);
    const double q = (c_minus - c_plus) * std::tan(std::numbers::pi * beta / 2.0) / sum;
    return {c, q};
}

double limit_scale(const StepLaw& law) {
    if (law.mode == StepMode::simple_symmetric) return 1.0 / std::sqrt(2.0);
    // Both lattice laws have P(eps > x) ~ x^-beta / 2 on each side.
    return std::pow(stable_norm_constants(law.beta, 0.5, 0.5).c, 1.0 / law.beta);
}

double stable_density_at_zero(double beta, double sigma) {
    return std::tgamma(1.0 + 1.0 / beta) / (std::numbers::pi * sigma);
}

double local_time_moment_limit(double beta, double sigma, double t) {
    const double z = stable_density_at_zero(beta, sigma);
    return std::pow(t, 1.0 - 1.0 / beta) * z * std::tgamma(1.0 - 1.0 / beta) / std::tgamma(2.0 - 1.0 / beta);
}

}  // namespace trapsim
