#include "trapsim/quasistable.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "trapsim/errors.hpp"
#include "trapsim/sampling.hpp"

namespace trapsim {

// ----------------------------------------------------------- StablePathGrid

double StablePathGrid::at(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("stable path: time must be nonnegative");
    const auto k = static_cast<std::int64_t>(std::floor(t / dt + 1e-9));
    if (k > steps()) throw HorizonExceeded("stable path: time beyond the horizon");
    return values[static_cast<std::size_t>(k)];
}

double StablePathGrid::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

StablePathGrid simulate_stable_path(double beta, double scale, double horizon, double dt, RandomStream& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("stable path: dt must be positive");
    if (!(scale > 0.0)) throw std::invalid_argument("stable path: scale must be positive");
    if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("stable path: beta must lie in (1,2]");
    StablePathGrid z;
    z.beta = beta;
    z.scale = scale;
    z.dt = dt;
    extend_stable_path(z, horizon, rng);
    return z;
}

void extend_stable_path(StablePathGrid& z, double horizon, RandomStream& rng) {
    const auto target = static_cast<std::int64_t>(std::ceil(horizon / z.dt - 1e-9));
    if (target <= z.steps()) return;
    const double step_scale = z.scale * std::pow(z.dt, 1.0 / z.beta);
    z.values.reserve(static_cast<std::size_t>(target) + 1);
    double x = z.values.back();
    for (std::int64_t k = z.steps(); k < target; ++k) {
        x += sample_symmetric_stable(z.beta, step_scale, rng);
        z.values.push_back(x);
    }
}

StablePathGrid stable_path_from_values(double beta, double dt, std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("stable path: at least one value is required");
    StablePathGrid z;
    z.beta = beta;
    z.dt = dt;
    z.values = std::move(values);
    return z;
}

// ----------------------------------------------------------- LocalTimeField

double default_kernel_eps(double dt, double beta) { return std::pow(dt, 1.0 / beta); }

LocalTimeField::LocalTimeField(const StablePathGrid& z, double t, double eps, double bin_width)
    : t_(t), eps_(eps), bin_(bin_width) {
    if (!(t >= 0.0)) throw std::invalid_argument("local time: t must be nonnegative");
    if (!(eps > 0.0 && bin_width > 0.0)) throw std::invalid_argument("local time: eps and bin width must be positive");
    if (t > z.horizon() + 1e-9 * z.dt) throw HorizonExceeded("local time: t beyond the path horizon");
    const auto full = static_cast<std::int64_t>(std::floor(t / z.dt));
    const double rest = t - static_cast<double>(full) * z.dt;
    std::vector<std::pair<double, double>> w;
    w.reserve(static_cast<std::size_t>(full) + 1);
    for (std::int64_t k = 0; k < full; ++k) w.emplace_back(z.values[static_cast<std::size_t>(k)], z.dt);
    if (rest > 0.0 && full <= z.steps()) w.emplace_back(z.values[static_cast<std::size_t>(full)], rest);
    std::sort(w.begin(), w.end());
    sorted_.reserve(w.size());
    prefix_.reserve(w.size() + 1);
    prefix_.push_back(0.0);
    for (const auto& [x, wt] : w) {
        sorted_.push_back(x);
        prefix_.push_back(prefix_.back() + wt);
        const auto bin = static_cast<std::int64_t>(std::floor(x / bin_));
        if (bins_.empty() || bins_.back().first != bin) bins_.emplace_back(bin, 0.0);
        bins_.back().second += wt;
    }
}

double LocalTimeField::at(double x) const {
    // Z in (x - eps, x + eps].
    auto lo = std::upper_bound(sorted_.begin(), sorted_.end(), x - eps_);
    auto hi = std::upper_bound(lo, sorted_.end(), x + eps_);
    const double mass = prefix_[static_cast<std::size_t>(hi - sorted_.begin())] -
                        prefix_[static_cast<std::size_t>(lo - sorted_.begin())];
    return mass / (2.0 * eps_);
}

double LocalTimeField::bin_density(double x) const {
    const auto bin = static_cast<std::int64_t>(std::floor(x / bin_));
    auto it = std::lower_bound(bins_.begin(), bins_.end(), std::make_pair(bin, -1.0));
    return (it != bins_.end() && it->first == bin) ? it->second / bin_ : 0.0;
}

double LocalTimeField::total_occupation() const { return prefix_.back(); }

std::vector<std::pair<std::int64_t, double>> LocalTimeField::bins() const { return bins_; }

LocalTimeField estimate_local_time(const StablePathGrid& z, double t, double eps, double bin_width) {
    if (eps <= 0.0) eps = default_kernel_eps(z.dt, z.beta);
    if (bin_width <= 0.0) bin_width = 2.0 * eps;
    return LocalTimeField(z, t, eps, bin_width);
}

// ------------------------------------------------------------ SpeedProcess

double SpeedProcess::at(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("speed: time must be nonnegative");
    const double pos = t / dt;
    const auto k = static_cast<std::size_t>(std::floor(pos));
    if (k + 1 >= values.size()) {
        if (k + 1 == values.size() && pos - static_cast<double>(k) < 1e-9) return values.back();
        throw HorizonExceeded("speed: time beyond the path horizon");
    }
    return values[k] + (pos - static_cast<double>(k)) * (values[k + 1] - values[k]);
}

SpeedProcess build_speed_process(const StablePathGrid& z, const DeepTrapSet& traps, double eps, double drift) {
    if (!(eps > 0.0)) throw std::invalid_argument("speed: eps must be positive");
    SpeedProcess s;
    s.dt = z.dt;
    s.eps = eps;
    s.drift = drift;
    s.delta = traps.delta();
    const auto& v = traps.depths();
    std::vector<double> cum(v.size() + 1, 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) cum[j + 1] = cum[j] + v[j];
    const std::size_t steps = static_cast<std::size_t>(z.steps());
    s.values.assign(steps + 1, 0.0);
    s.prefix_max.assign(steps + 1, 0.0);
    const double w = z.dt / (2.0 * eps);
    for (std::size_t k = 0; k < steps; ++k) {
        const double zk = z.values[k];
        if (std::abs(zk) + eps > traps.window())
            throw WindowViolation("speed: path left the trap window at step " + std::to_string(k));
        auto [a, b] = traps.range(zk - eps, zk + eps);
        double m = 0.0;
        for (std::size_t j = a; j < b; ++j) m = std::max(m, v[j]);
        s.values[k + 1] = s.values[k] + z.dt * drift + w * (cum[b] - cum[a]);
        s.prefix_max[k + 1] = std::max(s.prefix_max[k], m);
    }
    return s;
}

SpeedProcess speed_from_values(double dt, std::vector<double> values) {
    if (values.empty() || values.front() != 0.0) throw std::invalid_argument("speed: values must start at 0");
    for (std::size_t k = 1; k < values.size(); ++k)
        if (values[k] < values[k - 1]) throw std::invalid_argument("speed: values must be nondecreasing");
    SpeedProcess s;
    s.dt = dt;
    s.values = std::move(values);
    s.prefix_max.assign(s.values.size(), 0.0);
    return s;
}

double invert_speed(const SpeedProcess& s, double u) {
    if (!(u >= 0.0)) throw std::invalid_argument("inverse speed: u must be nonnegative");
    auto it = std::upper_bound(s.values.begin(), s.values.end(), u);
    if (it == s.values.end()) throw HorizonExceeded("inverse speed: u beyond S(horizon), extend the path");
    const auto k = static_cast<std::size_t>(it - s.values.begin()) - 1;
    const double frac = (u - s.values[k]) / (s.values[k + 1] - s.values[k]);
    return (static_cast<double>(k) + frac) * s.dt;
}

SelfSimExponents selfsim_exponents(double alpha, double beta) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("exponents: alpha must lie in (0,1)");
    if (!(beta > 1.0 && beta <= 2.0)) throw std::invalid_argument("exponents: beta must lie in (1,2]");
    SelfSimExponents e;
    e.gamma_s = 1.0 - 1.0 / beta + 1.0 / (alpha * beta);
    const double den = 1.0 + alpha * (beta - 1.0);
    e.h_y = alpha / den;
    e.h_g = 1.0 / den;
    e.h_y_stated = alpha * beta * beta / den;
    e.h_g_stated = beta * beta / den;
    return e;
}

// ------------------------------------------------------- QuasistableBundle

double QuasistableBundle::truncation_mass() const {
    return small_jump_mass(cfg_.alpha, traps_.delta(), traps_.window());
}

LimitState QuasistableBundle::state_at(double u) const {
    const auto& sv = s_.values;
    if (!(u >= 0.0)) throw std::invalid_argument("limit state: u must be nonnegative");
    auto it = std::upper_bound(sv.begin(), sv.end(), u);
    if (it == sv.end()) throw HorizonExceeded("limit state: u beyond S(horizon), extend the path");
    const auto k = static_cast<std::size_t>(it - sv.begin()) - 1;
    const double inc = sv[k + 1] - sv[k];
    double off = u - sv[k];
    LimitState st{(static_cast<double>(k) + off / inc) * s_.dt, z_.values[k], 0.0, -1, static_cast<std::int64_t>(k)};
    if (u == 0.0) return st;
    // Within a step the drift segment comes first, then each trap in position order.
    const double drift_len = s_.dt * s_.drift;
    if (off < drift_len) return st;
    off -= drift_len;
    const double zk = z_.values[k];
    auto [a, b] = traps_.range(zk - s_.eps, zk + s_.eps);
    const double w = s_.dt / (2.0 * s_.eps);
    const auto& x = traps_.positions();
    const auto& v = traps_.depths();
    for (std::size_t j = a; j < b; ++j) {
        const double len = w * v[j];
        if (off < len || j + 1 == b) {
            st.y = x[j];
            st.g = v[j];
            st.trap = static_cast<std::int64_t>(j);
            return st;
        }
        off -= len;
    }
    return st;
}

double QuasistableBundle::max_trap_depth_until(double u) const {
    const LimitState st = state_at(u);
    const auto k = static_cast<std::size_t>(st.step);
    double m = s_.prefix_max[k];
    if (st.trap >= 0) {
        const double zk = z_.values[k];
        auto [a, b] = traps_.range(zk - s_.eps, zk + s_.eps);
        (void)b;
        for (auto j = static_cast<std::int64_t>(a); j <= st.trap; ++j)
            m = std::max(m, traps_.depths()[static_cast<std::size_t>(j)]);
    }
    return m;
}

bool QuasistableBundle::same_position(const LimitState& a, const LimitState& b, double bin_width) {
    if (a.trap >= 0 || b.trap >= 0) return a.trap == b.trap;
    return std::abs(a.y - b.y) <= bin_width;
}

// ---------------------------------------------------- QuasistableSimulator

QuasistableSimulator::QuasistableSimulator(const QuasistableConfig& cfg, const RandomStream& rng)
    : z_rng_(rng.child("z")) {
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw std::invalid_argument("quasistable: alpha must lie in (0,1)");
    if (!(cfg.delta > 0.0)) throw std::invalid_argument("quasistable: delta must be positive");
    if (!(cfg.window_factor > 1.0)) throw std::invalid_argument("quasistable: window factor must exceed 1");
    b_.cfg_ = cfg;
    if (b_.cfg_.eps <= 0.0) b_.cfg_.eps = default_kernel_eps(cfg.dt, cfg.beta);
    b_.z_ = simulate_stable_path(cfg.beta, cfg.scale, cfg.initial_horizon, cfg.dt, z_rng_);
    const double m = b_.z_.max_abs();
    b_.traps_ = DeepTrapSet::sample(cfg.alpha, cfg.delta, std::max(cfg.window_factor * m, m + 2.0 * b_.cfg_.eps),
                                    rng.child("traps"));
    rebuild();
}

void QuasistableSimulator::rebuild() {
    const double drift =
        b_.cfg_.compensate ? b_.cfg_.alpha * std::pow(b_.traps_.delta(), 1.0 - b_.cfg_.alpha) / (1.0 - b_.cfg_.alpha)
                           : 0.0;
    b_.s_ = build_speed_process(b_.z_, b_.traps_, b_.cfg_.eps, drift);
}

void QuasistableSimulator::ensure_path_horizon(double t) {
    if (t <= b_.z_.horizon()) return;
    if (t / b_.cfg_.dt > static_cast<double>(b_.cfg_.max_steps))
        throw HorizonExceeded("quasistable: path horizon exceeds the step budget");
    extend_stable_path(b_.z_, t, z_rng_);
    const double m = b_.z_.max_abs();
    if (m + 2.0 * b_.cfg_.eps > b_.traps_.window())
        b_.traps_ = b_.traps_.extend_window(std::max(b_.cfg_.window_factor * m, m + 2.0 * b_.cfg_.eps));
    rebuild();
}

void QuasistableSimulator::ensure_physical_horizon(double u) {
    while (b_.s_.horizon() < b_.cfg_.horizon_margin * u) ensure_path_horizon(2.0 * b_.z_.horizon());
}

void QuasistableSimulator::set_delta(double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("quasistable: delta must be positive");
    b_.cfg_.delta = delta;
    b_.traps_ = b_.traps_.refine(delta);
    rebuild();
}

}  // namespace trapsim
