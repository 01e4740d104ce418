#include "trapsim/sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace trapsim {

std::string to_string(StepMode m) {
    switch (m) {
        case StepMode::lattice_pareto_tail: return "lattice-pareto-tail";
        case StepMode::lattice_unit_start: return "lattice-unit-start";
        case StepMode::simple_symmetric: return "simple-symmetric";
    }
    return "unknown";
}

StepMode step_mode_from_string(const std::string& s) {
    if (s == "lattice-pareto-tail" || s == "lattice") return StepMode::lattice_pareto_tail;
    if (s == "lattice-unit-start") return StepMode::lattice_unit_start;
    if (s == "simple-symmetric") return StepMode::simple_symmetric;
    throw std::invalid_argument("unknown step mode: " + s);
}

StepLaw::StepLaw(double b, StepMode m) : beta(b), mode(m) {
    if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("step law: beta must lie in (1,2]");
    if (mode == StepMode::simple_symmetric && beta != 2.0)
        throw std::invalid_argument("step law: simple-symmetric requires beta = 2");
    // The beta = 2 lattice tail has a log-divergent truncated variance.
    if (mode != StepMode::simple_symmetric && beta == 2.0)
        throw std::invalid_argument("step law: lattice tail requires beta < 2");
}

StepLaw StepLaw::for_beta(double beta) {
    return beta == 2.0 ? StepLaw(beta, StepMode::simple_symmetric)
                       : StepLaw(beta, StepMode::lattice_pareto_tail);
}

TrapLaw::TrapLaw(double a) : alpha(a) {
    if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("trap law: alpha must lie in (0,2]");
}

double TrapLaw::survival(double x) const noexcept { return x < 1.0 ? 1.0 : std::pow(x, -alpha); }

double TrapLaw::mean() const noexcept {
    return alpha > 1.0 ? alpha / (alpha - 1.0) : std::numeric_limits<double>::infinity();
}

std::int64_t step_from_uniforms(StepMode mode, double beta, double u_mag, double u_sign) {
    const std::int64_t sign = u_sign < 0.5 ? 1 : -1;
    if (mode == StepMode::simple_symmetric) return sign;
    // Cap keeps the cast defined; reaching it needs u below ~1e-28 at beta = 2.
    const double x = std::min(std::pow(u_mag, -1.0 / beta), 4.0e18);
    auto m = static_cast<std::int64_t>(std::floor(x));
    if (mode == StepMode::lattice_pareto_tail) m += 1;
    return sign * m;
}

double trap_depth_from_uniform(double alpha, double u) { return std::pow(u, -1.0 / alpha); }

double exponential_from_uniform(double mean, double u) { return -mean * std::log(u); }

std::int64_t sample_step_increment(const StepLaw& law, RandomStream& rng) {
    if (law.mode == StepMode::simple_symmetric) return step_from_uniforms(law.mode, law.beta, 0.5, rng.uniform());
    const double um = rng.uniform();
    const double us = rng.uniform();
    return step_from_uniforms(law.mode, law.beta, um, us);
}

double sample_trap_depth(const TrapLaw& law, RandomStream& rng) {
    return trap_depth_from_uniform(law.alpha, rng.uniform());
}

double sample_exponential(double mean, RandomStream& rng) {
    if (!(mean > 0.0)) throw std::invalid_argument("exponential: mean must be positive");
    return exponential_from_uniform(mean, rng.uniform());
}

double sample_symmetric_stable(double beta, double scale, RandomStream& rng) {
    if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("symmetric stable: beta must lie in (1,2]");
    const double v = std::numbers::pi * (rng.uniform() - 0.5);
    const double w = -std::log(rng.uniform());
    if (beta == 2.0) return scale * 2.0 * std::sin(v) * std::sqrt(w);
    const double x = std::sin(beta * v) / std::pow(std::cos(v), 1.0 / beta) *
                     std::pow(std::cos((1.0 - beta) * v) / w, (1.0 - beta) / beta);
    return scale * x;
}

double sample_one_sided_stable(double alpha, RandomStream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("one-sided stable: alpha must lie in (0,1)");
    const double u = std::numbers::pi * rng.uniform();
    const double w = -std::log(rng.uniform());
    return std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha) *
           std::pow(std::sin((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
}

std::pair<double, double> sample_be_pair(double pi, RandomStream& rng) {
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("BE pair: pi must lie in [0,1]");
    // Marshall-Olkin shocks: two private at rate pi, one common at rate 1-pi.
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double u1 = rng.uniform(), u2 = rng.uniform(), u12 = rng.uniform();
    const double e1 = pi > 0.0 ? -std::log(u1) / pi : inf;
    const double e2 = pi > 0.0 ? -std::log(u2) / pi : inf;
    const double e12 = pi < 1.0 ? -std::log(u12) / (1.0 - pi) : inf;
    return {std::min(e1, e12), std::min(e2, e12)};
}

}  // namespace trapsim
