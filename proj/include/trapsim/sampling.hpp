#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "trapsim/random_stream.hpp"

namespace trapsim {

enum class StepMode {
    lattice_pareto_tail,  // P(|eps| > k) = k^-beta for integer k >= 1
    lattice_unit_start,   // P(|eps| >= k) = k^-beta for integer k >= 1
    simple_symmetric,     // +-1, beta = 2 only
};

std::string to_string(StepMode m);
StepMode step_mode_from_string(const std::string& s);

struct StepLaw {
    double beta = 2.0;
    StepMode mode = StepMode::simple_symmetric;

    StepLaw() = default;
    StepLaw(double beta, StepMode mode);

    // Simple-symmetric at beta = 2, lattice Pareto tail otherwise.
    static StepLaw for_beta(double beta);
    bool is_lattice() const noexcept { return mode != StepMode::simple_symmetric; }
};

struct TrapLaw {
    double alpha = 0.5;
    double kappa_plus = 1.0;

    TrapLaw() = default;
    explicit TrapLaw(double alpha);
    double survival(double x) const noexcept;
    double mean() const noexcept;  // +inf for alpha <= 1
};

// Deterministic transforms, exposed for tests and for keyed sampling.
std::int64_t step_from_uniforms(StepMode mode, double beta, double u_mag, double u_sign);
double trap_depth_from_uniform(double alpha, double u);
double exponential_from_uniform(double mean, double u);

std::int64_t sample_step_increment(const StepLaw& law, RandomStream& rng);
double sample_trap_depth(const TrapLaw& law, RandomStream& rng);
double sample_exponential(double mean, RandomStream& rng);

// Characteristic function exp(-scale^beta |s|^beta); beta = 2 gives N(0, 2 scale^2).
double sample_symmetric_stable(double beta, double scale, RandomStream& rng);
// Positive stable with Laplace transform exp(-lambda^alpha), alpha in (0,1).
double sample_one_sided_stable(double alpha, RandomStream& rng);

// Joint survival exp{-pi (t+s) - (1-pi) max(t,s)}.
std::pair<double, double> sample_be_pair(double pi, RandomStream& rng);

}  // namespace trapsim
