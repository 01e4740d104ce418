#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "trapsim/random_stream.hpp"
#include "trapsim/sampling.hpp"

namespace trapsim {

struct WalkPath {
    StepLaw law;
    std::vector<std::int64_t> positions{0};

    std::int64_t steps() const noexcept { return static_cast<std::int64_t>(positions.size()) - 1; }
};

struct LocalTimeMap {
    std::int64_t up_to = 0;
    std::unordered_map<std::int64_t, std::int64_t> counts;

    std::int64_t at(std::int64_t site) const;
    std::int64_t total() const;
};

struct ScalingBundle {
    std::int64_t n = 1;
    double beta = 2.0;
    double alpha = 0.5;
    double d = 1.0, r = 1.0, b = 1.0, a = 1.0, c = 1.0;
};

WalkPath run_embedded_walk(std::int64_t n, const StepLaw& law, RandomStream& rng);
// Append steps until the path has total_steps steps, continuing rng.
void extend_walk(WalkPath& path, std::int64_t total_steps, RandomStream& rng);
WalkPath walk_from_increments(const StepLaw& law, const std::vector<std::int64_t>& increments);

LocalTimeMap local_time(const WalkPath& path, std::int64_t up_to);
// L(up_to, site) by a single scan, for hot loops that need one site only.
std::int64_t visits(const WalkPath& path, std::int64_t up_to, std::int64_t site);

ScalingBundle scaling_sequences(std::int64_t n, double beta, double alpha);

double rescaled_walk_at(const WalkPath& path, const ScalingBundle& sb, double t);
// The map must have been built up to floor(n t).
double rescaled_local_time(const LocalTimeMap& ltm, const ScalingBundle& sb, double t, double x);
double rescaled_local_time(const WalkPath& path, const ScalingBundle& sb, double t, double x);

struct StableConstants {
    double c;
    double q;
};
StableConstants stable_norm_constants(double beta, double c_plus, double c_minus);

// Scale sigma of the limit Z_1, whose characteristic function is exp(-sigma^beta |s|^beta).
double limit_scale(const StepLaw& law);
// Density of Z_1 at the origin.
double stable_density_at_zero(double beta, double sigma);
// Limit of E phi_n(t, 0).
double local_time_moment_limit(double beta, double sigma, double t);

std::int64_t floor_index(double n, double t);

}  // namespace trapsim
