#pragma once

#include <cstdint>
#include <vector>

#include "trapsim/environment.hpp"
#include "trapsim/random_stream.hpp"

namespace trapsim {

struct StablePathGrid {
    double beta = 2.0;
    double scale = 1.0;
    double dt = 1e-4;
    std::vector<double> values{0.0};

    std::int64_t steps() const noexcept { return static_cast<std::int64_t>(values.size()) - 1; }
    double horizon() const noexcept { return dt * static_cast<double>(steps()); }
    double at(double t) const;  // value at the grid node <= t
    double max_abs() const;
};

StablePathGrid simulate_stable_path(double beta, double scale, double horizon, double dt, RandomStream& rng);
void extend_stable_path(StablePathGrid& path, double horizon, RandomStream& rng);
StablePathGrid stable_path_from_values(double beta, double dt, std::vector<double> values);

// Occupation of the grid path on [0, t], including the partial last step.
class LocalTimeField {
public:
    LocalTimeField(const StablePathGrid& z, double t, double eps, double bin_width);

    double time() const noexcept { return t_; }
    double eps() const noexcept { return eps_; }
    double bin_width() const noexcept { return bin_; }
    // Kernel estimate (1/2eps) * int_0^t 1{x - eps < Z_s <= x + eps} ds.
    double at(double x) const;
    // Occupation density of the bin containing x.
    double bin_density(double x) const;
    double total_occupation() const;
    std::vector<std::pair<std::int64_t, double>> bins() const;

private:
    double t_, eps_, bin_;
    std::vector<double> sorted_;  // path values on [0, t)
    std::vector<double> prefix_;  // prefix_[i] = weight of sorted_[0..i)
    std::vector<std::pair<std::int64_t, double>> bins_;
};

double default_kernel_eps(double dt, double beta);
LocalTimeField estimate_local_time(const StablePathGrid& z, double t, double eps = 0.0, double bin_width = 0.0);

// S on the grid of Z: S_{k+1} = S_k + dt * (drift + (1/2eps) sum of v_j with Z_k - eps <= x_j < Z_k + eps).
struct SpeedProcess {
    double dt = 1e-4;
    double eps = 0.0;
    double drift = 0.0;  // compensator of the jumps below delta, per unit time
    double delta = 0.0;
    std::vector<double> values{0.0};
    std::vector<double> prefix_max;  // prefix_max[k] = deepest trap touched by steps < k

    double at(double t) const;  // linear interpolation between nodes
    double horizon() const noexcept { return values.back(); }
};

SpeedProcess build_speed_process(const StablePathGrid& z, const DeepTrapSet& traps, double eps, double drift);
SpeedProcess speed_from_values(double dt, std::vector<double> values);
// inf{t : S(t) > u}, linear within a grid step.
double invert_speed(const SpeedProcess& s, double u);

struct SelfSimExponents {
    double gamma_s;
    double h_y;
    double h_g;
    double h_y_stated;  // orders as printed in the source text, kept for reports
    double h_g_stated;
};
SelfSimExponents selfsim_exponents(double alpha, double beta);

struct QuasistableConfig {
    double alpha = 0.5;
    double beta = 2.0;
    double scale = 0.7071067811865476;
    double dt = 1e-4;
    double eps = 0.0;  // 0 selects dt^(1/beta)
    double delta = 1e-2;
    bool compensate = true;
    double window_factor = 1.5;
    double initial_horizon = 1.0;
    double horizon_margin = 1.2;
    std::int64_t max_steps = std::int64_t{1} << 27;
};

struct LimitState {
    double s_inverse;
    double y;
    double g;
    std::int64_t trap;  // -1 when shallow
    std::int64_t step;
};

class QuasistableBundle {
public:
    const QuasistableConfig& config() const noexcept { return cfg_; }
    const StablePathGrid& z() const noexcept { return z_; }
    const DeepTrapSet& traps() const noexcept { return traps_; }
    const SpeedProcess& speed() const noexcept { return s_; }
    SelfSimExponents exponents() const { return selfsim_exponents(cfg_.alpha, cfg_.beta); }
    double eps() const noexcept { return s_.eps; }
    double bin_width() const noexcept { return 2.0 * s_.eps; }
    double physical_horizon() const noexcept { return s_.horizon(); }
    double truncation_mass() const;

    LimitState state_at(double u) const;
    double quasistable_at(double u) const { return state_at(u).y; }
    double limit_trap_at(double u) const { return state_at(u).g; }
    double max_trap_depth_until(double u) const;
    LocalTimeField local_time(double t) const { return estimate_local_time(z_, t, s_.eps, 2.0 * s_.eps); }

    // Same position in the limit: the same trap, or both shallow within one bin.
    static bool same_position(const LimitState& a, const LimitState& b, double bin_width);

private:
    friend class QuasistableSimulator;
    QuasistableConfig cfg_;
    StablePathGrid z_;
    DeepTrapSet traps_;
    SpeedProcess s_;
};

class QuasistableSimulator {
public:
    QuasistableSimulator(const QuasistableConfig& cfg, const RandomStream& rng);

    // Grow the path by doubling until S(T_Z) >= margin * u.
    void ensure_physical_horizon(double u);
    void ensure_path_horizon(double t);
    // Change the truncation level on the same path; trap sets stay nested.
    void set_delta(double delta);

    const QuasistableBundle& bundle() const noexcept { return b_; }

private:
    void rebuild();

    RandomStream z_rng_;
    QuasistableBundle b_;
};

}  // namespace trapsim
