#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include <cmath>
// Boost 1.74 pchip calls unqualified isnan on double.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "trapsim/random_stream.hpp"
#include "trapsim/sampling.hpp"

namespace trapsim {

// Quenched Pareto environment. depth(i) is a pure function of (stream key, i);
// the memo only records which sites have been materialized.
class TrapField {
public:
    TrapField(TrapLaw law, RandomStream stream);
    // Field with prescribed depths at some sites (test and replay hook).
    TrapField(TrapLaw law, RandomStream stream, std::map<std::int64_t, double> fixed);

    double depth_at(std::int64_t site) const;
    const TrapLaw& law() const noexcept { return law_; }
    std::size_t materialized() const;
    std::int64_t window() const;  // largest |site| queried so far
    std::vector<std::pair<std::int64_t, double>> snapshot() const;
    void export_csv(std::ostream& os) const;

private:
    static constexpr std::size_t kStripes = 64;
    struct Stripe {
        mutable std::mutex mu;
        std::unordered_map<std::int64_t, double> memo;
    };
    double draw(std::int64_t site) const;

    TrapLaw law_;
    RandomStream stream_;
    std::map<std::int64_t, double> fixed_;
    mutable std::array<Stripe, kStripes> stripes_;
};

// Jumps of the two-sided alpha-stable subordinator V above delta on [-A, A],
// generated by LePage series per region so that lowering delta or widening A
// only appends jumps (nested sets across a delta ladder).
class DeepTrapSet {
public:
    DeepTrapSet() = default;  // empty set
    static DeepTrapSet sample(double alpha, double delta, double window, const RandomStream& rng);
    // Fixed jumps (test and replay hook); cannot be refined or extended.
    static DeepTrapSet from_jumps(double alpha, double delta, double window, std::vector<double> x,
                                  std::vector<double> v);

    double alpha() const noexcept { return alpha_; }
    double delta() const noexcept { return delta_; }
    double window() const noexcept { return window_; }
    std::size_t size() const noexcept { return x_.size(); }
    const std::vector<double>& positions() const noexcept { return x_; }
    const std::vector<double>& depths() const noexcept { return v_; }

    // Jumps above delta2 >= delta.
    DeepTrapSet restrict(double delta2) const;
    // Continue every region's series down to delta2 <= delta.
    DeepTrapSet refine(double delta2) const;
    // Add the annulus A < |x| <= window2.
    DeepTrapSet extend_window(double window2) const;

    // Index range [first, last) of jumps with lo <= x < hi.
    std::pair<std::size_t, std::size_t> range(double lo, double hi) const;
    void export_csv(std::ostream& os) const;

private:
    struct Region {
        RandomStream rng;
        double inner = 0.0;  // region is inner < |x| <= outer
        double outer = 0.0;
        std::uint64_t count = 0;
        double gamma = 0.0;
    };
    void grow(Region& r, double delta);
    void rebuild_sorted();

    double alpha_ = 0.5;
    double delta_ = 1.0;
    double window_ = 1.0;
    double floor_ = 1.0;  // every region is generated down to this threshold
    std::vector<Region> regions_;
    std::vector<std::pair<double, double>> jumps_;  // unsorted (x, v), all generated
    std::vector<double> x_, v_;                      // sorted view above delta_
};

double small_jump_mass(double alpha, double delta, double window);

// Unit one-sided stable law (Laplace transform exp(-lambda^alpha)), tabulated,
// and the maps G, G^-1, g_n that couple Pareto traps to increments of V.
class CouplingMaps {
public:
    explicit CouplingMaps(double alpha);
    static std::shared_ptr<const CouplingMaps> shared(double alpha);

    double alpha() const noexcept { return alpha_; }
    // Scale with V_1 = kappa * S.
    double v_scale() const noexcept { return kappa_; }

    double cdf(double x) const;
    double survival(double x) const;
    double quantile(double p) const;
    double quantile_from_survival(double q) const;

    // Direct integral evaluation, bypassing the table.
    double cdf_direct(double x) const;
    double survival_direct(double x) const;

    double G(double y) const;          // P(V_1 > G(y)) = P(tau_0 > y)
    double G_inverse(double z) const;  // P(tau_0 > G^-1(z)) = P(V_1 > z)
    double g_n(double v_increment, std::int64_t n, double beta) const;

private:
    double log_cdf_table(double lx) const;
    double log_sf_table(double lx) const;
    double series_survival(double x) const;

    double alpha_;
    double kappa_;
    double lx_lo_, lx_hi_;
    std::unique_ptr<boost::math::interpolators::pchip<std::vector<double>>> log_cdf_;
    std::unique_ptr<boost::math::interpolators::pchip<std::vector<double>>> log_sf_;
};

double coupling_quantile(const CouplingMaps& maps, double p);
double rescaled_coupled_depth(const CouplingMaps& maps, double v_increment, std::int64_t n, double alpha, double beta);

}  // namespace trapsim
