#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "trapsim/sampling.hpp"
#include "trapsim/statistics.hpp"
#include "trapsim/walk.hpp"

using namespace trapsim;

TEST_CASE("empirical cdf and KS statistics") {
    EmpiricalCDF e({3.0, 1.0, 2.0, 2.0});
    CHECK(e(0.5) == 0.0);
    CHECK(e(2.0) == 0.75);
    CHECK(e(3.0) == 1.0);
    auto same = ks_two_sample(e, e);
    CHECK(same.stat == 0.0);
    CHECK(same.p_value == doctest::Approx(1.0));
    auto apart = ks_two_sample(EmpiricalCDF({0.0, 1.0}), EmpiricalCDF({5.0, 6.0}));
    CHECK(apart.stat == 1.0);
    auto half = ks_two_sample(EmpiricalCDF({0.0, 1.0}), EmpiricalCDF({0.5, 6.0}));
    CHECK(half.stat == 0.5);
    // Uniform grid against the uniform law: sup gap is 1/n at the right of each jump.
    std::vector<double> g;
    for (int i = 1; i <= 10; ++i) g.push_back(i / 10.0);
    auto one = ks_one_sample(EmpiricalCDF(g), [](double x) { return std::clamp(x, 0.0, 1.0); });
    CHECK(one.stat == doctest::Approx(0.1));
}

TEST_CASE("Kolmogorov distribution tail") {
    CHECK(kolmogorov_survival(0.0) == 1.0);
    CHECK(kolmogorov_survival(1.0) == doctest::Approx(0.26999967).epsilon(1e-6));
    CHECK(kolmogorov_survival(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(kolmogorov_survival(1.6276) == doctest::Approx(0.01).epsilon(2e-3));
    CHECK(kolmogorov_survival(0.5) == doctest::Approx(0.96394524).epsilon(1e-6));
    // The two series agree where they switch.
    CHECK(kolmogorov_survival(1.18 - 1e-12) == doctest::Approx(kolmogorov_survival(1.18)).epsilon(1e-9));
}

TEST_CASE("two-sample KS is calibrated under the null") {
    int rejects = 0;
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
        RandomStream r = RandomStream(21, "ks").child(t);
        std::vector<double> a(300), b(500);
        for (auto& x : a) x = sample_exponential(1.0, r);
        for (auto& x : b) x = sample_exponential(1.0, r);
        rejects += ks_two_sample(EmpiricalCDF(a), EmpiricalCDF(b)).p_value < 0.05;
    }
    CHECK(rejects > 0.02 * trials);
    CHECK(rejects < 0.09 * trials);
}

TEST_CASE("estimates") {
    auto b = binomial_estimate(30, 100);
    CHECK(b.value == doctest::Approx(0.3));
    CHECK(b.se == doctest::Approx(oracle::binomial_se(0.3, 100)));
    auto m = mean_estimate({1.0, 2.0, 3.0, 4.0});
    CHECK(m.value == doctest::Approx(2.5));
    CHECK(m.se == doctest::Approx(oracle::mean_se({1.0, 2.0, 3.0, 4.0}).second));
    CHECK(joint_z({1.0, 0.0, 1}, {1.0, 0.0, 1}) == 0.0);
    CHECK(joint_z({1.0, 0.3, 10}, {1.5, 0.4, 10}) == doctest::Approx(1.0));
}

TEST_CASE("aging curve interpolation") {
    auto c = AgingCurve::from_replicas("t", {1.0, 4.0}, {{1.0, 0.0}, {0.0, 0.0}});
    CHECK(c.values[0] == doctest::Approx(0.5));
    CHECK(c.values[1] == 0.0);
    CHECK(c(0.0) == 1.0);
    CHECK(c(0.5) == doctest::Approx(0.75));
    CHECK(c(2.0) == doctest::Approx(0.25));
    CHECK(c(100.0) == 0.0);
    CHECK(c.replica(0).values[0] == 1.0);
    CHECK(c.replica(1).se[0] == 0.0);
}

TEST_CASE("integrated aging formula closed forms") {
    auto one = [](double) { return 1.0; };
    for (double pi : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        auto r = integrated_aging_formula(2.0, pi, one);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(r.tail_residual == 0.0);
    }
    auto R = [](double th) { return 1.0 / (1.0 + th); };
    CHECK(integrated_aging_formula(3.0, 0.0, R).value == doctest::Approx(0.25));
    // pi = 1: integral over u of R(theta u) / (1+u)^2 on the half line, by the substitution u = x/(1-x).
    double direct = 0.0;
    const int m = 200000;
    for (int i = 0; i < m; ++i) {
        const double x = (i + 0.5) / m, u = x / (1.0 - x);
        direct += R(3.0 * u) / ((1.0 + u) * (1.0 + u)) / ((1.0 - x) * (1.0 - x)) / m;
    }
    CHECK(integrated_aging_formula(3.0, 1.0, R).value == doctest::Approx(direct).epsilon(1e-6));
    CHECK_THROWS_AS(integrated_aging_formula(1.0, 1.5, R), std::invalid_argument);
    auto truncated = integrated_aging_formula(1.0, 0.5, R, 10.0);
    CHECK(truncated.tail_residual == doctest::Approx(0.5 * 0.1 / 1.05));
}

TEST_CASE("integrated aging formula matches a BE-pair average") {
    auto R = [](double th) { return 1.0 / (1.0 + th); };
    const int reps = 200000;
    for (double pi : {0.3, 0.8}) {
        std::vector<double> v(reps);
        RandomStream r(22, "be");
        for (int i = 0; i < reps; ++i) {
            auto [T, S] = sample_be_pair(pi, r);
            v[i] = R(2.0 * S / T);
        }
        auto [mean, se] = oracle::mean_se(v);
        CHECK(std::abs(integrated_aging_formula(2.0, pi, R).value - mean) < 4.0 * se);
    }
}

TEST_CASE("formula estimate averages the replica curves") {
    auto c = AgingCurve::from_replicas("t", {0.5, 1.0, 2.0}, {{1, 1, 0}, {1, 0, 0}, {0, 0, 0}});
    auto e = integrated_aging_formula_estimate(1.0, 0.5, c);
    CHECK(e.value == doctest::Approx(integrated_aging_formula(1.0, 0.5, c).value).epsilon(1e-9));
    CHECK(e.se > 0.0);
}

TEST_CASE("prelimit estimators at zero lag") {
    const StepLaw law = StepLaw::for_beta(1.5);
    CHECK(estimate_R_prelimit(law, 0.5, 50.0, 0.0, 50, RandomStream(23, "r")).value == 1.0);
    CHECK(estimate_Omega_prelimit(law, 0.5, 50.0, 0.0, 50, RandomStream(23, "o")).value == 0.0);
    auto r = estimate_R_prelimit(law, 0.5, 50.0, 500.0, 300, RandomStream(23, "r2"));
    CHECK(r.value > 0.0);
    CHECK(r.value < 1.0);
}

TEST_CASE("localization profile") {
    auto field = std::make_shared<const TrapField>(TrapLaw(0.5), RandomStream(24, "env"));
    auto p = localization_profile(field, StepLaw::for_beta(2.0), {0.0, 10.0, 1000.0}, 400, RandomStream(24, "w"));
    CHECK(p.q[0] == 1.0);
    for (double q : p.q) {
        CHECK(q >= 1.0 / 400.0);
        CHECK(q <= 1.0);
    }
}

TEST_CASE("maximal trap law") {
    CHECK(max_trap_limit_cdf(std::pow(2.0, 1.0 / 0.5), 0.5) == doctest::Approx(std::exp(-1.0)));
    CHECK(max_trap_limit_cdf(0.0, 0.5) == 0.0);
    CHECK(max_trap_exact_cdf(0.5, 0.5, 1.0, 3) == 0.0);
    CHECK(max_trap_exact_cdf(4.0, 0.5, 1.0, 3) == doctest::Approx(0.125));
    auto chk = max_trap_law_check(1000, 0.5, 2.0, 2000, RandomStream(25, "max"));
    CHECK(chk.ks_vs_exact < 0.04);
    CHECK(chk.ks_vs_limit < 0.05);
}
