#include "trapsim/experiments/criteria.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "trapsim/csv.hpp"
#include "trapsim/parallel.hpp"
#include "trapsim/quasistable.hpp"
#include "trapsim/statistics.hpp"
#include "trapsim/trap_walk.hpp"
#include "trapsim/walk.hpp"

namespace trapsim::experiments {

namespace {

using nlohmann::json;

constexpr double kZ99OneSided = 2.3263478740408408;
constexpr double kZ99TwoSided = 2.5758293035489004;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

json estimate_json(const Estimate& e) { return {{"value", e.value}, {"se", e.se}, {"count", e.count}}; }

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (!(v[k] > v[k - 1])) return false;
    return true;
}

// Criterion defaults with explicit config overrides.
struct Knobs {
    const ExperimentConfig& cfg;
    double beta(double d) const { return cfg.beta.value_or(d); }
    double alpha(double d) const { return cfg.alphas.empty() ? d : cfg.alphas.front(); }
    std::int64_t n(std::int64_t d) const { return cfg.n.value_or(d); }
    std::int64_t replicas(std::int64_t d) const { return cfg.replicas.value_or(d); }
    double delta(double d) const {
        return cfg.deltas.empty() ? d : *std::min_element(cfg.deltas.begin(), cfg.deltas.end());
    }
    std::vector<double> ladder() const {
        std::vector<double> l = cfg.deltas.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3} : cfg.deltas;
        std::sort(l.rbegin(), l.rend());
        return l;
    }
    RandomStream stream(int id) const { return RandomStream(cfg.seed, "criterion/" + std::to_string(id)); }
};

QuasistableConfig limit_config(double alpha, double beta, double delta) {
    QuasistableConfig q;
    q.alpha = alpha;
    q.beta = beta;
    q.scale = limit_scale(StepLaw::for_beta(beta));
    q.delta = delta;
    return q;
}

// Clock LLN in the finite-mean regime.
CriterionResult c1(const Knobs& k) {
    const double beta = k.beta(1.5), alpha = k.alpha(1.5);
    if (!(alpha > 1.0 && alpha <= 2.0)) throw std::invalid_argument("clock-lln: alpha must lie in (1,2]");
    const std::int64_t n = k.n(100000), reps = k.replicas(200);
    const double slope = TrapLaw(alpha).mean(), tol = 0.05, need = 0.95;
    const ScalingBundle sb = scaling_sequences(n, beta, alpha);
    const RandomStream base = k.stream(1);
    auto dev = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
        TrapModelRun run(StepLaw::for_beta(beta), TrapLaw(alpha), base.child(i));
        run.extend_steps(n);
        return clock_sup_deviation(run.clock(), sb, ClockRegime::alpha_above_one, slope, 1.0);
    }, k.cfg.threads);
    const double within = static_cast<double>(std::count_if(dev.begin(), dev.end(), [&](double d) { return d < tol; })) /
                          static_cast<double>(reps);
    CriterionResult r{1, "clock law of large numbers", within >= need, {}, {}};
    r.measured = {{"beta", beta}, {"alpha", alpha}, {"n", n}, {"replicas", reps}, {"slope", slope},
                  {"fraction_within", within}, {"median_deviation", median(dev)}};
    r.thresholds = {{"deviation", tol}, {"fraction", need}};
    return r;
}

// Clock at alpha = 1: deviation shrinks with n.
CriterionResult c2(const Knobs& k) {
    const double beta = k.beta(1.5);
    const std::int64_t reps = k.replicas(50);
    const std::vector<std::int64_t> ns = {10000, 100000, 1000000};
    std::vector<double> med, at_one;
    for (std::int64_t n : ns) {
        const ScalingBundle sb = scaling_sequences(n, beta, 1.0);
        const RandomStream base = k.stream(2).child("n=" + std::to_string(n));
        auto rows = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
            TrapModelRun run(StepLaw::for_beta(beta), TrapLaw(1.0), base.child(i));
            run.extend_steps(n);
            return std::pair<double, double>(
                clock_sup_deviation(run.clock(), sb, ClockRegime::alpha_one, 1.0, 1.0),
                rescaled_clock(run.clock(), sb, ClockRegime::alpha_one, 1.0));
        }, k.cfg.threads);
        std::vector<double> dev, end;
        for (const auto& [d, c] : rows) {
            dev.push_back(d);
            end.push_back(c);
        }
        med.push_back(median(dev));
        at_one.push_back(median(end));
    }
    std::vector<double> neg(med.size());
    std::transform(med.begin(), med.end(), neg.begin(), [](double x) { return -x; });
    CriterionResult r{2, "clock at alpha one", strictly_increasing(neg), {}, {}};
    r.measured = {{"beta", beta}, {"n", ns}, {"replicas", reps}, {"median_deviation", med}, {"median_clock_at_1", at_one}};
    r.thresholds = {{"rule", "median deviation strictly decreasing in n"}};
    return r;
}

// Frechet law of the deepest trap in the range.
CriterionResult c3(const Knobs& k) {
    const double alpha = k.alpha(0.5), beta = k.beta(1.5);
    require_alpha_below_one(alpha, "max-trap");
    const std::int64_t n = k.n(10000), reps = k.replicas(10000);
    const auto chk = max_trap_law_check(n, alpha, beta, reps, k.stream(3));
    CriterionResult r{3, "maximal trap law", chk.ks_vs_limit < 0.02, {}, {}};
    r.measured = {{"alpha", alpha}, {"beta", beta}, {"n", n}, {"replicas", reps},
                  {"ks_vs_limit", chk.ks_vs_limit}, {"ks_vs_exact", chk.ks_vs_exact}};
    r.thresholds = {{"ks", 0.02}};
    return r;
}

// Self-similarity of (S, Y, G) on the same limit paths at t = 1 and t = 2.
CriterionResult c4(const Knobs& k) {
    const double alpha = k.alpha(0.5);
    require_alpha_below_one(alpha, "selfsim");
    const std::int64_t reps = k.replicas(2000);
    const double delta = k.delta(1e-4), tol = 0.05;
    const std::vector<double> betas = k.cfg.beta ? std::vector<double>{*k.cfg.beta} : std::vector<double>{1.5, 2.0};
    CriterionResult r{4, "self-similarity", true, {}, {}};
    r.measured = {{"alpha", alpha}, {"replicas", reps}, {"delta", delta}, {"cases", json::array()}};
    for (double beta : betas) {
        const auto e = selfsim_exponents(alpha, beta);
        const QuasistableConfig q = limit_config(alpha, beta, delta);
        const RandomStream base = k.stream(4).child("beta=" + format_double(beta));
        auto rows = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
            QuasistableSimulator sim(q, base.child(i));
            sim.ensure_path_horizon(2.0);
            sim.ensure_physical_horizon(2.0);
            const auto& b = sim.bundle();
            const LimitState s1 = b.state_at(1.0), s2 = b.state_at(2.0);
            return std::array<double, 6>{b.speed().at(1.0), b.speed().at(2.0), s1.y, s2.y, s1.g, s2.g};
        }, k.cfg.threads);
        auto ks = [&](int col, double order) {
            std::vector<double> later, scaled;
            for (const auto& row : rows) {
                later.push_back(row[2 * col + 1]);
                scaled.push_back(std::pow(2.0, order) * row[2 * col]);
            }
            return ks_two_sample(EmpiricalCDF(later), EmpiricalCDF(scaled)).stat;
        };
        const double ks_s = ks(0, e.gamma_s), ks_y = ks(1, e.h_y), ks_g = ks(2, e.h_g);
        const bool ok = ks_s < tol && ks_y < tol && ks_g < tol;
        r.pass = r.pass && ok;
        r.measured["cases"].push_back({{"beta", beta},
                                       {"gamma_s", e.gamma_s},
                                       {"h_y", e.h_y},
                                       {"h_g", e.h_g},
                                       {"h_y_stated", e.h_y_stated},
                                       {"h_g_stated", e.h_g_stated},
                                       {"ks_s", ks_s},
                                       {"ks_y", ks_y},
                                       {"ks_g", ks_g},
                                       {"ks_y_stated", ks(1, e.h_y_stated)},
                                       {"ks_g_stated", ks(2, e.h_g_stated)},
                                       {"pass", ok}});
    }
    r.measured["note"] =
        "orders h_y_stated and h_g_stated carry an extra factor beta^2 relative to the orders implied by "
        "gamma_s; the derived orders are the ones tested";
    r.thresholds = {{"ks", tol}};
    return r;
}

// Prelimit marginals at time a_n against the limit at time 1.
CriterionResult c5(const Knobs& k) {
    const double beta = k.beta(2.0), alpha = k.alpha(0.5);
    require_alpha_below_one(alpha, "limit-match");
    const std::int64_t n = k.n(10000), reps = k.replicas(2000);
    const double delta = k.delta(1e-3);
    const ScalingBundle sb = scaling_sequences(n, beta, alpha);
    const StepLaw law = StepLaw::for_beta(beta);
    const RandomStream pre_rng = k.stream(5).child("prelimit"), lim_rng = k.stream(5).child("limit");
    auto pre = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
        TrapModelRun run(law, TrapLaw(alpha), pre_rng.child(i));
        return std::pair<double, double>(static_cast<double>(run.position_at(sb.a)) / sb.d, run.depth_at_time(sb.a) / sb.b);
    }, k.cfg.threads);
    const QuasistableConfig q = limit_config(alpha, beta, delta);
    auto lim = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
        QuasistableSimulator sim(q, lim_rng.child(i));
        sim.ensure_physical_horizon(1.0);
        const LimitState st = sim.bundle().state_at(1.0);
        return std::pair<double, double>(st.y, st.g);
    }, k.cfg.threads);
    std::vector<double> xa, xb, ea, eb;
    for (const auto& [x, e] : pre) {
        xa.push_back(x);
        ea.push_back(e);
    }
    for (const auto& [y, g] : lim) {
        xb.push_back(y);
        eb.push_back(g);
    }
    const double ks_y = ks_two_sample(EmpiricalCDF(xa), EmpiricalCDF(xb)).stat;
    const double ks_g = ks_two_sample(EmpiricalCDF(ea), EmpiricalCDF(eb)).stat;
    CriterionResult r{5, "prelimit to limit marginals", ks_y < 0.05 && ks_g < 0.07, {}, {}};
    r.measured = {{"beta", beta}, {"alpha", alpha}, {"n", n}, {"replicas", reps}, {"delta", delta},
                  {"ks_position", ks_y}, {"ks_trap", ks_g}};
    r.thresholds = {{"ks_position", 0.05}, {"ks_trap", 0.07}};
    return r;
}

// First moment of the local time at the origin, prelimit and limit.
CriterionResult c6(const Knobs& k) {
    const double beta = k.beta(1.5);
    const std::int64_t n = k.n(10000), reps = k.replicas(20000);
    const double dt = k.cfg.dt.value_or(1e-4), tol = 0.07;
    const StepLaw law = StepLaw::for_beta(beta);
    const double sigma = limit_scale(law);
    const double target = local_time_moment_limit(beta, sigma, 1.0);
    const ScalingBundle sb = scaling_sequences(n, beta, 0.5);
    const RandomStream pre_rng = k.stream(6).child("prelimit"), lim_rng = k.stream(6).child("limit");
    auto pre = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
        RandomStream r = pre_rng.child(i);
        const WalkPath w = run_embedded_walk(n, law, r);
        return rescaled_local_time(w, sb, 1.0, 0.0);
    }, k.cfg.threads);
    auto lim = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
        RandomStream r = lim_rng.child(i);
        const StablePathGrid z = simulate_stable_path(beta, sigma, 1.0, dt, r);
        return estimate_local_time(z, 1.0).at(0.0);
    }, k.cfg.threads);
    const Estimate ep = mean_estimate(pre), el = mean_estimate(lim);
    const double rp = ep.value / target - 1.0, rl = el.value / target - 1.0;
    CriterionResult r{6, "local time moment", std::abs(rp) < tol && std::abs(rl) < tol, {}, {}};
    r.measured = {{"beta", beta}, {"n", n}, {"replicas", reps}, {"dt", dt}, {"sigma", sigma}, {"target", target},
                  {"prelimit", estimate_json(ep)}, {"limit", estimate_json(el)},
                  {"prelimit_relative_error", rp}, {"limit_relative_error", rl}};
    r.thresholds = {{"relative_error", tol}};
    return r;
}

std::vector<double> default_curve_thetas() {
    std::vector<double> t;
    for (int j = -8; j <= 16; ++j) t.push_back(std::pow(2.0, j / 2.0));
    return t;
}

// Integrated aging: quadrature identity, then MC against the formula fed with the limit R curve.
CriterionResult c7(const Knobs& k) {
    const double beta = k.beta(2.0), alpha = k.alpha(0.5), theta = 1.0;
    require_alpha_below_one(alpha, "aging");
    const std::int64_t n = k.n(10000), reps = k.replicas(2000);
    const double delta = k.delta(1e-3);
    const std::vector<double> pis = k.cfg.pis.empty() ? std::vector<double>{0.0, 0.5, 1.0} : k.cfg.pis;
    std::vector<double> thetas = k.cfg.thetas.empty() ? default_curve_thetas() : k.cfg.thetas;
    std::sort(thetas.begin(), thetas.end());
    double identity_err = 0.0;
    for (double pi : {0.0, 0.25, 0.5, 0.75, 1.0})
        identity_err = std::max(identity_err, std::abs(integrated_aging_formula(theta, pi, [](double) { return 1.0; }).value - 1.0));
    const AgingCurve curve = estimate_R_curve(thetas, reps, limit_config(alpha, beta, delta), k.stream(7).child("curve"));
    const ScalingBundle sb = scaling_sequences(n, beta, alpha);
    const auto mc = integrated_aging_mc(theta, pis, sb.a, StepLaw::for_beta(beta), alpha, reps, k.stream(7).child("mc"));
    CriterionResult r{7, "integrated aging", identity_err <= 1e-6, {}, {}};
    json rows = json::array();
    for (std::size_t j = 0; j < pis.size(); ++j) {
        const Estimate f = integrated_aging_formula_estimate(theta, pis[j], curve);
        const FormulaResult fr = integrated_aging_formula(theta, pis[j], curve);
        const double z = joint_z(mc[j], f);
        r.pass = r.pass && z < 3.0;
        rows.push_back({{"pi", pis[j]}, {"mc", estimate_json(mc[j])}, {"formula", estimate_json(f)},
                        {"tail_residual", fr.tail_residual}, {"joint_z", z}});
    }
    r.measured = {{"beta", beta}, {"alpha", alpha}, {"n", n}, {"replicas", reps}, {"delta", delta},
                  {"theta", theta}, {"identity_error", identity_err}, {"comparisons", rows},
                  {"curve", {{"theta", curve.thetas}, {"R", curve.values}, {"se", curve.se}}}};
    r.thresholds = {{"identity", 1e-6}, {"joint_z", 3.0}};
    return r;
}

// Non-integrated aging: probability that a deeper trap is found in (t, 2t].
CriterionResult c8(const Knobs& k) {
    const double beta = k.beta(2.0), alpha = k.alpha(0.5);
    require_alpha_below_one(alpha, "aging");
    const std::int64_t n = k.n(10000), reps = k.replicas(2000);
    const double delta = k.delta(1e-3);
    const ScalingBundle sb = scaling_sequences(n, beta, alpha);
    const Estimate pre = estimate_Omega_prelimit(StepLaw::for_beta(beta), alpha, sb.a, sb.a, reps, k.stream(8).child("prelimit"));
    const Estimate lim = estimate_Omega_limit(1.0, 1.0, reps, limit_config(alpha, beta, delta), k.stream(8).child("limit"));
    const double z = joint_z(pre, lim);
    const bool inside = lim.value - kZ99TwoSided * lim.se > 0.0 && lim.value + kZ99TwoSided * lim.se < 1.0;
    CriterionResult r{8, "non-integrated aging", z < 3.0 && inside, {}, {}};
    r.measured = {{"beta", beta}, {"alpha", alpha}, {"n", n}, {"replicas", reps}, {"delta", delta},
                  {"prelimit", estimate_json(pre)}, {"limit", estimate_json(lim)}, {"joint_z", z}};
    r.thresholds = {{"joint_z", 3.0}, {"confidence", 0.99}};
    return r;
}

// R is nontrivial and nonincreasing.
CriterionResult c9(const Knobs& k) {
    const double beta = k.beta(2.0), alpha = k.alpha(0.5);
    require_alpha_below_one(alpha, "aging");
    const std::int64_t reps = k.replicas(2000);
    const double delta = k.delta(1e-3);
    const std::vector<double> thetas = {0.5, 1.0, 2.0, 4.0};
    const AgingCurve c = estimate_R_curve(thetas, reps, limit_config(alpha, beta, delta), k.stream(9));
    bool pass = c.values[1] - kZ99OneSided * c.se[1] > 0.0;
    for (std::size_t j = 1; j < thetas.size(); ++j)
        pass = pass && c.values[j] <= c.values[j - 1] + 2.0 * std::hypot(c.se[j], c.se[j - 1]);
    CriterionResult r{9, "nontrivial aging function", pass, {}, {}};
    r.measured = {{"beta", beta}, {"alpha", alpha}, {"replicas", reps}, {"delta", delta},
                  {"theta", thetas}, {"R", c.values}, {"se", c.se}};
    r.thresholds = {{"confidence", 0.99}, {"monotone_joint_se", 2.0}};
    return r;
}

// Quenched localization for alpha < 1 and its absence for alpha > 1.
CriterionResult c10(const Knobs& k) {
    const double beta = k.beta(1.5);
    const std::int64_t n = k.n(10000), walks = k.replicas(2000), envs = 10;
    std::map<double, std::vector<double>> medians;
    for (double alpha : {0.5, 1.5}) {
        const ScalingBundle sb = scaling_sequences(n, beta, alpha);
        const std::vector<double> times = {sb.a, 2.0 * sb.a, 4.0 * sb.a};
        const RandomStream base = k.stream(10).child("alpha=" + format_double(alpha));
        std::vector<std::vector<double>> q(times.size());
        for (std::int64_t e = 0; e < envs; ++e) {
            const RandomStream env = base.child(static_cast<std::uint64_t>(e));
            auto field = std::make_shared<const TrapField>(TrapLaw(alpha), env.child("env"));
            const auto p = localization_profile(field, StepLaw::for_beta(beta), times, walks, env.child("walks"));
            for (std::size_t j = 0; j < times.size(); ++j) q[j].push_back(p.q[j]);
        }
        for (const auto& col : q) medians[alpha].push_back(median(col));
    }
    const auto& lo = medians[0.5];
    const auto& hi = medians[1.5];
    const double floor = *std::min_element(lo.begin(), lo.end());
    std::vector<double> neg(hi.size());
    std::transform(hi.begin(), hi.end(), neg.begin(), [](double x) { return -x; });
    const bool pass = floor >= 0.1 && strictly_increasing(neg) && hi.back() < 0.05 && floor >= 2.0 * hi.back();
    CriterionResult r{10, "localization dichotomy", pass, {}, {}};
    r.measured = {{"beta", beta}, {"n", n}, {"environments", envs}, {"walks", walks},
                  {"median_q_alpha_0.5", lo}, {"median_q_alpha_1.5", hi}, {"floor", floor}};
    r.thresholds = {{"floor", 0.1}, {"terminal", 0.05}, {"ratio", 2.0}};
    return r;
}

// Share of the clock carried by deep traps.
CriterionResult c11(const Knobs& k) {
    // Alpha stays fixed: the suite's alpha override drives the finite-mean check.
    const double beta = k.beta(1.5), alpha = 0.5;
    const std::int64_t n = k.n(10000), reps = k.replicas(200);
    auto ladder = k.ladder();
    if (std::find(ladder.begin(), ladder.end(), 1e-2) == ladder.end()) ladder.push_back(1e-2);
    std::sort(ladder.rbegin(), ladder.rend());
    const ScalingBundle sb = scaling_sequences(n, beta, alpha);
    const RandomStream base = k.stream(11);
    auto rows = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
        TrapModelRun run(StepLaw::for_beta(beta), TrapLaw(alpha), base.child(i));
        run.extend_steps(n);
        std::vector<double> s;
        for (double d : ladder) s.push_back(deep_clock_share(run.clock(), sb, d, 1.0));
        return s;
    }, k.cfg.threads);
    std::vector<double> mean(ladder.size(), 0.0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < row.size(); ++j) mean[j] += row[j] / static_cast<double>(reps);
    const double at_01 = mean[static_cast<std::size_t>(std::find(ladder.begin(), ladder.end(), 1e-2) - ladder.begin())];
    CriterionResult r{11, "shallow traps negligible", strictly_increasing(mean) && at_01 > 0.9, {}, {}};
    r.measured = {{"beta", beta}, {"alpha", alpha}, {"n", n}, {"replicas", reps},
                  {"delta", ladder}, {"mean_share", mean}, {"share_at_0.01", at_01}};
    r.thresholds = {{"share_at_0.01", 0.9}};
    return r;
}

// The quasistable process spends more of its time on traps as delta decreases.
CriterionResult c12(const Knobs& k) {
    const double beta = k.beta(1.5), alpha = k.alpha(0.5);
    require_alpha_below_one(alpha, "selfsim");
    const std::int64_t reps = k.replicas(200), points = 100;
    const auto ladder = k.ladder();
    const RandomStream base = k.stream(12);
    auto rows = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
        QuasistableSimulator sim(limit_config(alpha, beta, ladder.front()), base.child(i));
        std::vector<double> frac;
        for (double d : ladder) {
            sim.set_delta(d);
            sim.ensure_physical_horizon(1.0);
            std::int64_t on = 0;
            for (std::int64_t j = 1; j <= points; ++j)
                on += sim.bundle().limit_trap_at(static_cast<double>(j) / static_cast<double>(points)) > 0.0;
            frac.push_back(static_cast<double>(on) / static_cast<double>(points));
        }
        return frac;
    }, k.cfg.threads);
    std::vector<double> mean(ladder.size(), 0.0);
    for (const auto& row : rows)
        for (std::size_t j = 0; j < row.size(); ++j) mean[j] += row[j] / static_cast<double>(reps);
    CriterionResult r{12, "quasistable process sits on traps", strictly_increasing(mean), {}, {}};
    r.measured = {{"beta", beta}, {"alpha", alpha}, {"replicas", reps}, {"grid_points", points},
                  {"delta", ladder}, {"fraction_on_traps", mean}};
    r.thresholds = {{"rule", "fraction strictly increasing as delta decreases"}};
    return r;
}

}  // namespace

nlohmann::json CriterionResult::to_json() const {
    return {{"id", id}, {"name", name}, {"pass", pass}, {"measured", measured}, {"thresholds", thresholds}};
}

CriterionResult run_criterion(int id, const ExperimentConfig& cfg) {
    cfg.validate();
    const Knobs k{cfg};
    const auto start = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
        case 1: r = c1(k); break;
        case 2: r = c2(k); break;
        case 3: r = c3(k); break;
        case 4: r = c4(k); break;
        case 5: r = c5(k); break;
        case 6: r = c6(k); break;
        case 7: r = c7(k); break;
        case 8: r = c8(k); break;
        case 9: r = c9(k); break;
        case 10: r = c10(k); break;
        case 11: r = c11(k); break;
        case 12: r = c12(k); break;
        default: throw std::invalid_argument("criterion: id must lie in 1..12");
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"clock-lln", "max-trap", "selfsim", "limit-match", "aging", "localization"};
    return names;
}

const std::vector<int>& suite_criteria(const std::string& suite) {
    static const std::map<std::string, std::vector<int>> table = {
        {"clock-lln", {1, 2, 11}}, {"max-trap", {3}},       {"selfsim", {4, 12}},
        {"limit-match", {5, 6}},   {"aging", {7, 8, 9}},    {"localization", {10}}};
    auto it = table.find(suite);
    if (it == table.end()) throw std::invalid_argument("verify: unknown suite '" + suite + "'");
    return it->second;
}

}  // namespace trapsim::experiments
