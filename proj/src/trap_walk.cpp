#include "trapsim/trap_walk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "trapsim/errors.hpp"

namespace trapsim {

double ClockPath::holding(std::int64_t k) const {
    const auto i = static_cast<std::size_t>(k);
    return k == 0 ? cumulative[0] : cumulative[i] - cumulative[i - 1];
}

ClockRegime regime_for(double alpha) {
    if (alpha < 1.0) return ClockRegime::alpha_below_one;
    if (alpha == 1.0) return ClockRegime::alpha_one;
    return ClockRegime::alpha_above_one;
}

double clock_scale(const ScalingBundle& sb, ClockRegime regime) {
    // c_n already carries the log factor at alpha = 1.
    return regime == ClockRegime::alpha_below_one ? sb.a : sb.c;
}

ClockPath run_clock(const WalkPath& walk, const TrapField& field, RandomStream& rng) {
    ClockPath c;
    c.cumulative.reserve(walk.positions.size());
    c.depths.reserve(walk.positions.size());
    double acc = 0.0;
    for (auto x : walk.positions) {
        const double tau = field.depth_at(x);
        acc += tau * sample_exponential(1.0, rng);
        c.depths.push_back(tau);
        c.cumulative.push_back(acc);
    }
    return c;
}

ClockPath clock_from_holding(const WalkPath& walk, const TrapField& field, const std::vector<double>& holding) {
    if (holding.size() != walk.positions.size())
        throw std::invalid_argument("clock: one holding time per visited state is required");
    ClockPath c;
    double acc = 0.0;
    for (std::size_t k = 0; k < holding.size(); ++k) {
        if (!(holding[k] > 0.0)) throw std::invalid_argument("clock: holding times must be positive");
        const double tau = field.depth_at(walk.positions[k]);
        acc += tau * holding[k];
        c.depths.push_back(tau);
        c.cumulative.push_back(acc);
    }
    return c;
}

std::int64_t step_index_at(const ClockPath& clock, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("position: time must be nonnegative");
    auto it = std::upper_bound(clock.cumulative.begin(), clock.cumulative.end(), t);
    if (it == clock.cumulative.end()) throw HorizonExceeded("position: time beyond the clock horizon, extend n");
    return it - clock.cumulative.begin();
}

std::int64_t position_at(const WalkPath& walk, const ClockPath& clock, double t) {
    return walk.positions[static_cast<std::size_t>(step_index_at(clock, t))];
}

double rescaled_clock(const ClockPath& clock, const ScalingBundle& sb, ClockRegime regime, double t) {
    const std::int64_t k = floor_index(static_cast<double>(sb.n), t);
    if (k == 0) return 0.0;
    if (k - 1 > clock.steps()) throw HorizonExceeded("rescaled clock: n t beyond the path, extend n");
    return clock.cumulative[static_cast<std::size_t>(k - 1)] / clock_scale(sb, regime);
}

double clock_sup_deviation(const ClockPath& clock, const ScalingBundle& sb, ClockRegime regime, double slope,
                           double t_max) {
    const double n = static_cast<double>(sb.n);
    const std::int64_t kmax = floor_index(n, t_max);
    if (kmax - 1 > clock.steps()) throw HorizonExceeded("clock deviation: n t beyond the path, extend n");
    const double scale = clock_scale(sb, regime);
    double sup = 0.0;
    for (std::int64_t k = 0; k <= kmax; ++k) {
        const double c = k == 0 ? 0.0 : clock.cumulative[static_cast<std::size_t>(k - 1)] / scale;
        const double t0 = static_cast<double>(k) / n;
        const double t1 = std::min(static_cast<double>(k + 1) / n, t_max);
        sup = std::max({sup, std::abs(c - slope * t0), std::abs(c - slope * t1)});
    }
    return sup;
}

double deep_clock_share(const ClockPath& clock, const ScalingBundle& sb, double delta, double t) {
    const std::int64_t k = floor_index(static_cast<double>(sb.n), t);
    if (k > clock.steps()) throw HorizonExceeded("deep clock share: n t beyond the path, extend n");
    const double cut = delta * sb.b;
    double deep = 0.0, total = 0.0;
    for (std::int64_t i = 0; i <= k; ++i) {
        const double h = clock.holding(i);
        total += h;
        if (clock.depths[static_cast<std::size_t>(i)] > cut) deep += h;
    }
    return total > 0.0 ? deep / total : 0.0;
}

double rescaled_position(const WalkPath& walk, const ClockPath& clock, const ScalingBundle& sb, double t) {
    const double tp = t * clock_scale(sb, regime_for(sb.alpha));
    return static_cast<double>(position_at(walk, clock, tp)) / sb.d;
}

double trap_process_at(const ClockPath& clock, const ScalingBundle& sb, double t, bool rescale) {
    const double tp = rescale ? t * clock_scale(sb, regime_for(sb.alpha)) : t;
    const double tau = clock.depths[static_cast<std::size_t>(step_index_at(clock, tp))];
    return rescale ? tau / sb.b : tau;
}

double max_depth_until(const ClockPath& clock, double t) {
    const std::int64_t k = step_index_at(clock, t);
    return *std::max_element(clock.depths.begin(), clock.depths.begin() + k + 1);
}

double site_form_clock(const WalkPath& walk, const TrapField& field, std::int64_t k, RandomStream& rng) {
    if (k < 0 || k > walk.steps()) throw HorizonExceeded("site-form clock: k outside the path");
    std::unordered_map<std::int64_t, std::int64_t> visits;
    for (std::int64_t i = 0; i <= k; ++i) ++visits[walk.positions[static_cast<std::size_t>(i)]];
    std::vector<std::pair<std::int64_t, std::int64_t>> ordered(visits.begin(), visits.end());
    std::sort(ordered.begin(), ordered.end());
    double total = 0.0;
    for (const auto& [site, count] : ordered) {
        double e = 0.0;
        for (std::int64_t j = 0; j < count; ++j) e += sample_exponential(1.0, rng);
        total += field.depth_at(site) * e;
    }
    return total;
}

// ------------------------------------------------------------- TrapModelRun

TrapModelRun::TrapModelRun(const StepLaw& law, const TrapLaw& trap_law, const RandomStream& rng)
    : TrapModelRun(law, std::make_shared<const TrapField>(trap_law, rng.child("env")), rng) {}

TrapModelRun::TrapModelRun(const StepLaw& law, std::shared_ptr<const TrapField> field, const RandomStream& rng)
    : field_(std::move(field)), walk_rng_(rng.child("walk")), hold_rng_(rng.child("hold")) {
    walk_.law = law;
    const double tau = depth(0);
    clock_.depths.push_back(tau);
    clock_.cumulative.push_back(tau * sample_exponential(1.0, hold_rng_));
    running_max_.push_back(tau);
}

double TrapModelRun::depth(std::int64_t site) {
    std::int64_t idx = site + offset_;
    if (idx < 0 || idx >= static_cast<std::int64_t>(cache_.size())) {
        std::int64_t lo = -offset_, hi = static_cast<std::int64_t>(cache_.size()) - offset_;
        std::int64_t span = std::max<std::int64_t>(64, 2 * (hi - lo));
        std::int64_t new_lo = std::min(lo, site) - span / 2;
        std::int64_t new_hi = std::max(hi, site + 1) + span / 2;
        if (new_hi - new_lo > (std::int64_t{1} << 26)) {
            // A rare giant jump: keep the dense cache and memoize the far site separately.
            auto [it, inserted] = far_.try_emplace(site, 0.0);
            if (inserted) it->second = field_->depth_at(site);
            return it->second;
        }
        std::vector<double> grown(static_cast<std::size_t>(new_hi - new_lo), std::numeric_limits<double>::quiet_NaN());
        for (std::int64_t s = lo; s < hi; ++s) grown[static_cast<std::size_t>(s - new_lo)] = cache_[static_cast<std::size_t>(s + offset_)];
        cache_.swap(grown);
        offset_ = -new_lo;
        idx = site + offset_;
    }
    double& slot = cache_[static_cast<std::size_t>(idx)];
    if (std::isnan(slot)) slot = field_->depth_at(site);
    return slot;
}

void TrapModelRun::extend_steps(std::int64_t total_steps) {
    const std::int64_t old = walk_.steps();
    if (total_steps <= old) return;
    extend_walk(walk_, total_steps, walk_rng_);
    double acc = clock_.cumulative.back();
    double mx = running_max_.back();
    for (std::int64_t k = old + 1; k <= total_steps; ++k) {
        const double tau = depth(walk_.positions[static_cast<std::size_t>(k)]);
        acc += tau * sample_exponential(1.0, hold_rng_);
        mx = std::max(mx, tau);
        clock_.depths.push_back(tau);
        clock_.cumulative.push_back(acc);
        running_max_.push_back(mx);
    }
}

void TrapModelRun::extend_to_time(double t) {
    while (!(clock_.cumulative.back() > t)) extend_steps(std::max<std::int64_t>(1024, 2 * walk_.steps()));
}

std::int64_t TrapModelRun::position_at(double t) {
    extend_to_time(t);
    return trapsim::position_at(walk_, clock_, t);
}

double TrapModelRun::depth_at_time(double t) {
    extend_to_time(t);
    return clock_.depths[static_cast<std::size_t>(step_index_at(clock_, t))];
}

double TrapModelRun::max_depth_until(double t) {
    extend_to_time(t);
    return running_max_[static_cast<std::size_t>(step_index_at(clock_, t))];
}

}  // namespace trapsim
