#include "trapsim/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "trapsim/parallel.hpp"
#include "trapsim/trap_walk.hpp"
#include "trapsim/walk.hpp"

namespace trapsim {

// ------------------------------------------------------------- ECDF and KS

EmpiricalCDF::EmpiricalCDF(std::vector<double> sample) : sorted_(std::move(sample)) {
    if (sorted_.empty()) throw std::invalid_argument("ecdf: empty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCDF::operator()(double x) const {
    auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double kolmogorov_survival(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // Theta-function form of the CDF, fast for small lambda.
        const double f = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int k = 1; k <= 9; k += 2) sum += std::exp(f * k * k);
        return 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum;
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-17) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(const EmpiricalCDF& a, const EmpiricalCDF& b) {
    const auto& x = a.sorted();
    const auto& y = b.sorted();
    const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] <= v) ++i;
        while (j < y.size() && y[j] <= v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

KsResult ks_one_sample(const EmpiricalCDF& a, const std::function<double(double)>& cdf) {
    const auto& x = a.sorted();
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    const double ne = std::sqrt(n);
    return {d, kolmogorov_survival((ne + 0.12 + 0.11 / ne) * d)};
}

Estimate binomial_estimate(std::int64_t successes, std::int64_t trials) {
    if (trials <= 0) throw std::invalid_argument("estimate: no trials");
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

Estimate mean_estimate(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("estimate: no values");
    const double n = static_cast<double>(values.size());
    double m = 0.0;
    for (double v : values) m += v;
    m /= n;
    double ss = 0.0;
    for (double v : values) ss += (v - m) * (v - m);
    const double var = values.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {m, std::sqrt(var / n), static_cast<std::int64_t>(values.size())};
}

double joint_z(const Estimate& a, const Estimate& b) {
    const double se = std::sqrt(a.se * a.se + b.se * b.se);
    const double diff = std::abs(a.value - b.value);
    if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return diff / se;
}

// ------------------------------------------------------------ AgingCurve

double AgingCurve::operator()(double theta) const {
    if (thetas.empty()) throw std::invalid_argument("aging curve: empty");
    if (theta <= 0.0) return 1.0;
    if (theta <= thetas.front()) return 1.0 + (values.front() - 1.0) * theta / thetas.front();
    if (theta >= thetas.back()) return values.back();
    auto it = std::upper_bound(thetas.begin(), thetas.end(), theta);
    const auto i = static_cast<std::size_t>(it - thetas.begin());
    const double l0 = std::log(thetas[i - 1]), l1 = std::log(thetas[i]);
    const double w = (std::log(theta) - l0) / (l1 - l0);
    return values[i - 1] + w * (values[i] - values[i - 1]);
}

AgingCurve AgingCurve::from_replicas(std::string provenance, std::vector<double> thetas,
                                     std::vector<std::vector<double>> per_replica) {
    AgingCurve c;
    c.provenance = std::move(provenance);
    c.thetas = std::move(thetas);
    c.per_replica = std::move(per_replica);
    for (std::size_t k = 0; k < c.thetas.size(); ++k) {
        std::vector<double> col;
        col.reserve(c.per_replica.size());
        for (const auto& r : c.per_replica) col.push_back(r[k]);
        const Estimate e = mean_estimate(col);
        c.values.push_back(e.value);
        c.se.push_back(e.se);
    }
    return c;
}

AgingCurve AgingCurve::replica(std::size_t i) const {
    AgingCurve c;
    c.provenance = provenance;
    c.thetas = thetas;
    c.values = per_replica.at(i);
    c.se.assign(thetas.size(), 0.0);
    return c;
}

// ------------------------------------------------------------ R estimators

Estimate estimate_R_prelimit(const StepLaw& law, double alpha, double t, double s, std::int64_t replicas,
                             const RandomStream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("R prelimit: alpha must lie in (0,1)");
    if (!(t >= 0.0 && s >= 0.0)) throw std::invalid_argument("R prelimit: times must be nonnegative");
    auto hits = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t i) {
        TrapModelRun run(law, TrapLaw(alpha), rng.child(i));
        return static_cast<int>(run.position_at(t) == run.position_at(t + s));
    });
    std::int64_t k = 0;
    for (int h : hits) k += h;
    return binomial_estimate(k, replicas);
}

Estimate estimate_R_limit(double theta, std::int64_t replicas, const QuasistableConfig& cfg, const RandomStream& rng,
                          double t) {
    if (!(theta >= 0.0)) throw std::invalid_argument("R limit: theta must be nonnegative");
    auto hits = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t i) {
        QuasistableSimulator sim(cfg, rng.child(i));
        sim.ensure_physical_horizon(t * (1.0 + theta));
        const auto& b = sim.bundle();
        return static_cast<int>(
            QuasistableBundle::same_position(b.state_at(t), b.state_at(t * (1.0 + theta)), b.bin_width()));
    });
    std::int64_t k = 0;
    for (int h : hits) k += h;
    return binomial_estimate(k, replicas);
}

AgingCurve estimate_R_curve(const std::vector<double>& thetas, std::int64_t replicas, const QuasistableConfig& cfg,
                            const RandomStream& rng) {
    if (!std::is_sorted(thetas.begin(), thetas.end()) || thetas.empty() || thetas.front() <= 0.0)
        throw std::invalid_argument("R curve: thetas must be positive and increasing");
    auto rows = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t i) {
        QuasistableSimulator sim(cfg, rng.child(i));
        sim.ensure_physical_horizon(2.0);
        const auto& b = sim.bundle();
        std::vector<double> row;
        row.reserve(thetas.size());
        for (double th : thetas) {
            // Self-similarity makes P(Y_s = Y_{s(1+theta)}) independent of s.
            const double s = std::min(1.0, 2.0 / (1.0 + th));
            row.push_back(QuasistableBundle::same_position(b.state_at(s), b.state_at(s * (1.0 + th)), b.bin_width())
                              ? 1.0
                              : 0.0);
        }
        return row;
    });
    return AgingCurve::from_replicas("limit", thetas, std::move(rows));
}

// ----------------------------------------------------------- aging formula

FormulaResult integrated_aging_formula(double theta, double pi, const std::function<double(double)>& R,
                                       double theta_max) {
    if (!(pi >= 0.0 && pi <= 1.0)) throw std::invalid_argument("aging formula: pi must lie in [0,1]");
    if (!(theta >= 0.0)) throw std::invalid_argument("aging formula: theta must be nonnegative");
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double pibar = 1.0 - pi;
    double value = pibar / (1.0 + pi) * R(theta);
    double residual = 0.0;
    if (pi > 0.0) {
        auto head = [&](double u) { return R(theta * u) / ((1.0 + pi * u) * (1.0 + pi * u)); };
        // Tail over u in (1, inf) after u = 1/w.
        auto tail = [&](double w) {
            if (w <= 0.0) return R(theta_max > 0.0 ? theta_max : 1e300);
            return R(theta / w) / ((pi * w + 1.0) * (pi * w + 1.0));
        };
        const double i1 = GK::integrate(head, 0.0, 1.0, 15, 1e-12);
        const double i2 = GK::integrate(tail, 0.0, 1.0, 15, 1e-12);
        value += pi * (i1 + i2);
        if (theta_max > 0.0 && theta > 0.0) {
            // Mass of w in (0, theta / theta_max) where R is only bounded.
            const double wc = std::min(1.0, theta / theta_max);
            residual = pi * (wc / (1.0 + pi * wc));
        }
    }
    return {value, residual};
}

FormulaResult integrated_aging_formula(double theta, double pi, const AgingCurve& curve) {
    return integrated_aging_formula(theta, pi, [&](double th) { return curve(th); }, curve.thetas.back());
}

Estimate integrated_aging_formula_estimate(double theta, double pi, const AgingCurve& curve) {
    if (curve.per_replica.empty()) throw std::invalid_argument("aging formula: curve has no replica data");
    std::vector<double> vals;
    vals.reserve(curve.per_replica.size());
    for (std::size_t i = 0; i < curve.per_replica.size(); ++i)
        vals.push_back(integrated_aging_formula(theta, pi, curve.replica(i)).value);
    return mean_estimate(vals);
}

std::vector<Estimate> integrated_aging_mc(double theta, const std::vector<double>& pis, double scale,
                                          const StepLaw& law, double alpha, std::int64_t replicas,
                                          const RandomStream& rng) {
    auto rows = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t i) {
        const RandomStream rep = rng.child(i);
        TrapModelRun run(law, TrapLaw(alpha), rep);
        std::vector<double> hits;
        for (double pi : pis) {
            RandomStream be = rep.child("be");  // common random numbers across pi
            auto [T, S] = sample_be_pair(pi, be);
            const double t1 = scale * T;
            const double t2 = t1 + theta * scale * S;
            hits.push_back(run.position_at(t1) == run.position_at(t2) ? 1.0 : 0.0);
        }
        return hits;
    });
    std::vector<Estimate> out;
    for (std::size_t k = 0; k < pis.size(); ++k) {
        std::int64_t c = 0;
        for (const auto& r : rows) c += r[k] > 0.5;
        out.push_back(binomial_estimate(c, replicas));
    }
    return out;
}

// ------------------------------------------------------------------ Omega

Estimate estimate_Omega_prelimit(const StepLaw& law, double alpha, double t, double s, std::int64_t replicas,
                                 const RandomStream& rng) {
    auto hits = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t i) {
        TrapModelRun run(law, TrapLaw(alpha), rng.child(i));
        return static_cast<int>(run.max_depth_until(t) < run.max_depth_until(t + s));
    });
    std::int64_t k = 0;
    for (int h : hits) k += h;
    return binomial_estimate(k, replicas);
}

Estimate estimate_Omega_limit(double t, double s, std::int64_t replicas, const QuasistableConfig& cfg,
                              const RandomStream& rng) {
    auto hits = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t i) {
        QuasistableSimulator sim(cfg, rng.child(i));
        sim.ensure_physical_horizon(t + s);
        const auto& b = sim.bundle();
        return static_cast<int>(b.max_trap_depth_until(t) < b.max_trap_depth_until(t + s));
    });
    std::int64_t k = 0;
    for (int h : hits) k += h;
    return binomial_estimate(k, replicas);
}

// ----------------------------------------------------------- localization

LocalizationProfile localization_profile(const std::shared_ptr<const TrapField>& field, const StepLaw& law,
                                         const std::vector<double>& times, std::int64_t replicas,
                                         const RandomStream& rng) {
    if (replicas <= 0) throw std::invalid_argument("localization: replicas must be positive");
    auto rows = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t i) {
        TrapModelRun run(law, field, rng.child(i));
        std::vector<std::int64_t> pos;
        pos.reserve(times.size());
        for (double t : times) pos.push_back(run.position_at(t));
        return pos;
    });
    LocalizationProfile p;
    p.times = times;
    p.replicas = replicas;
    for (std::size_t k = 0; k < times.size(); ++k) {
        std::map<std::int64_t, std::int64_t> counts;
        std::int64_t best = 0;
        for (const auto& r : rows) best = std::max(best, ++counts[r[k]]);
        p.q.push_back(static_cast<double>(best) / static_cast<double>(replicas));
    }
    return p;
}

// ------------------------------------------------------------- max trap law

double max_trap_limit_cdf(double x, double alpha) { return x > 0.0 ? std::exp(-2.0 * std::pow(x, -alpha)) : 0.0; }

double max_trap_exact_cdf(double x, double alpha, double b_n, std::int64_t sites) {
    const double y = x * b_n;
    if (y < 1.0) return 0.0;
    return std::exp(static_cast<double>(sites) * std::log1p(-std::pow(y, -alpha)));
}

MaxTrapCheck max_trap_law_check(std::int64_t n, double alpha, double beta, std::int64_t replicas,
                                const RandomStream& rng) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("max trap: alpha must lie in (0,1)");
    const ScalingBundle sb = scaling_sequences(n, beta, alpha);
    const auto radius = static_cast<std::int64_t>(std::floor(sb.d));
    auto maxima = parallel_map(static_cast<std::size_t>(replicas), [&](std::size_t i) {
        const TrapField field(TrapLaw(alpha), rng.child(i).child("env"));
        double m = 0.0;
        for (std::int64_t s = -radius; s <= radius; ++s) m = std::max(m, field.depth_at(s));
        return m / sb.b;
    });
    EmpiricalCDF ecdf(std::move(maxima));
    const auto lim = ks_one_sample(ecdf, [&](double x) { return max_trap_limit_cdf(x, alpha); });
    const auto ex = ks_one_sample(ecdf, [&](double x) { return max_trap_exact_cdf(x, alpha, sb.b, 2 * radius + 1); });
    return {std::move(ecdf), lim.stat, ex.stat};
}

}  // namespace trapsim
