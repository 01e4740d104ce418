#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "trapsim/environment.hpp"
#include "trapsim/random_stream.hpp"
#include "trapsim/walk.hpp"

namespace trapsim {

// cumulative[k] = sum_{i<=k} tau_{X_i} T_i; depths[k] = tau_{X_k}.
struct ClockPath {
    std::vector<double> cumulative;
    std::vector<double> depths;

    std::int64_t steps() const noexcept { return static_cast<std::int64_t>(cumulative.size()) - 1; }
    double horizon() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
    double holding(std::int64_t k) const;
};

enum class ClockRegime { alpha_below_one, alpha_one, alpha_above_one };
ClockRegime regime_for(double alpha);
double clock_scale(const ScalingBundle& sb, ClockRegime regime);

ClockPath run_clock(const WalkPath& walk, const TrapField& field, RandomStream& rng);
// Deterministic holding times (test hook): cumulative[k] = sum tau_{X_i} holding[i].
ClockPath clock_from_holding(const WalkPath& walk, const TrapField& field, const std::vector<double>& holding);

// Index of the embedded step occupied at physical time t (right-continuous).
std::int64_t step_index_at(const ClockPath& clock, double t);
std::int64_t position_at(const WalkPath& walk, const ClockPath& clock, double t);

// Clock after floor(n t) jumps, scaled by a_n or c_n; equals 0 at t = 0.
double rescaled_clock(const ClockPath& clock, const ScalingBundle& sb, ClockRegime regime, double t);
// Exact sup over [0, t_max] of |rescaled clock - slope t|, using that the clock
// is piecewise constant between the times k/n.
double clock_sup_deviation(const ClockPath& clock, const ScalingBundle& sb, ClockRegime regime, double slope,
                           double t_max);
// Fraction of C_{nt} accrued at sites with tau / b_n > delta.
double deep_clock_share(const ClockPath& clock, const ScalingBundle& sb, double delta, double t);

double rescaled_position(const WalkPath& walk, const ClockPath& clock, const ScalingBundle& sb, double t);
// tau at the occupied site; rescaled by b_n^-1 when rescale is set.
double trap_process_at(const ClockPath& clock, const ScalingBundle& sb, double t, bool rescale = true);
// Largest depth visited up to physical time t (unscaled).
double max_depth_until(const ClockPath& clock, double t);

// Clock in site form: sum_i tau_i * (sum of L(k, i) unit exponentials).
double site_form_clock(const WalkPath& walk, const TrapField& field, std::int64_t k, RandomStream& rng);

// One trajectory of the trap model: environment, embedded walk and clock, all
// extendable with continuing streams.
class TrapModelRun {
public:
    TrapModelRun(const StepLaw& law, const TrapLaw& trap_law, const RandomStream& rng);
    TrapModelRun(const StepLaw& law, std::shared_ptr<const TrapField> field, const RandomStream& rng);

    void extend_steps(std::int64_t total_steps);
    // Extend by doubling until the clock strictly exceeds t.
    void extend_to_time(double t);

    const WalkPath& walk() const noexcept { return walk_; }
    const ClockPath& clock() const noexcept { return clock_; }
    const TrapField& field() const noexcept { return *field_; }
    std::shared_ptr<const TrapField> field_ptr() const noexcept { return field_; }

    std::int64_t position_at(double t);
    double depth_at_time(double t);
    double max_depth_until(double t);

private:
    double depth(std::int64_t site);

    std::shared_ptr<const TrapField> field_;
    RandomStream walk_rng_;
    RandomStream hold_rng_;
    WalkPath walk_;
    ClockPath clock_;
    std::vector<double> cache_;  // dense site cache, NaN when unset
    std::int64_t offset_ = 0;   // cache_[site + offset_]
    std::unordered_map<std::int64_t, double> far_;
    std::vector<double> running_max_;
};

}  // namespace trapsim
