#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "trapsim/errors.hpp"
#include "trapsim/statistics.hpp"
#include "trapsim/walk.hpp"

using namespace trapsim;

namespace {

// E L(n, 0) for the lattice law P(|eps| > k) = k^-beta (k >= 1) from
// P(X_k = 0) = (1/2pi) int phi(s)^k ds, summed in closed form over k.
double exact_mean_visits_to_origin(double beta, int n) {
    const int kmax = 100000;
    std::vector<double> tail(kmax + 2);
    for (int k = 1; k <= kmax + 1; ++k) tail[k] = std::pow(double(k), -beta);
    auto phi = [&](double s) {
        // Summation by parts: sum_{m>=2} (T(m-1) - T(m)) cos(s m).
        double acc = tail[1] * std::cos(2.0 * s);
        for (int k = 2; k <= kmax; ++k) acc += tail[k] * (std::cos(s * (k + 1)) - std::cos(s * k));
        return acc;
    };
    auto integrand = [&](double s) {
        const double p = phi(s);
        if (std::abs(1.0 - p) < 1e-14) return double(n + 1);
        return (1.0 - std::pow(p, n + 1)) / (1.0 - p);
    };
    // Symmetric in s; panels refined near the origin where the integrand peaks.
    double total = 0.0;
    double a = 0.0;
    for (double b = 1e-5; a < std::numbers::pi; b = std::min(std::numbers::pi, b * 1.6)) {
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 0, 0);
        a = b;
    }
    return total / std::numbers::pi;
}

}  // namespace

TEST_CASE("walk construction") {
    RandomStream r(1, "w");
    CHECK(run_embedded_walk(0, StepLaw::for_beta(1.5), r).positions == std::vector<std::int64_t>{0});
    auto p = walk_from_increments(StepLaw::for_beta(2.0), {1, 1, -1});
    CHECK(p.positions == std::vector<std::int64_t>{0, 1, 2, 1});
    auto w = run_embedded_walk(1000, StepLaw::for_beta(2.0), r);
    for (std::size_t k = 1; k < w.positions.size(); ++k) CHECK(std::abs(w.positions[k] - w.positions[k - 1]) == 1);
    auto q = run_embedded_walk(1000, StepLaw::for_beta(1.5), r);
    for (std::size_t k = 1; k < q.positions.size(); ++k) CHECK(std::abs(q.positions[k] - q.positions[k - 1]) >= 2);
    CHECK_THROWS_AS(run_embedded_walk(-1, StepLaw::for_beta(2.0), r), std::invalid_argument);
}

TEST_CASE("walk extension continues the same sequence") {
    RandomStream r1(2, "w"), r2(2, "w");
    auto a = run_embedded_walk(500, StepLaw::for_beta(1.5), r1);
    auto b = run_embedded_walk(200, StepLaw::for_beta(1.5), r2);
    extend_walk(b, 500, r2);
    CHECK(a.positions == b.positions);
}

TEST_CASE("local time counting and bookkeeping") {
    auto p = walk_from_increments(StepLaw::for_beta(2.0), {1, -1, -1, 1});
    auto lt = local_time(p, 4);
    CHECK(lt.at(0) == 3);
    CHECK(lt.at(1) == 1);
    CHECK(lt.at(-1) == 1);
    CHECK(lt.at(7) == 0);
    RandomStream r(3, "w");
    auto q = run_embedded_walk(5000, StepLaw::for_beta(1.3), r);
    for (std::int64_t k : {0, 17, 5000}) CHECK(local_time(q, k).total() == k + 1);
    CHECK_THROWS_AS(local_time(q, 5001), HorizonExceeded);
    CHECK(visits(q, 5000, 0) == local_time(q, 5000).at(0));
}

TEST_CASE("scaling sequences") {
    auto s = scaling_sequences(10000, 2.0, 0.5);
    CHECK(s.d == doctest::Approx(100.0));
    CHECK(s.r == doctest::Approx(100.0));
    CHECK(s.b == doctest::Approx(1e4));
    CHECK(s.a == doctest::Approx(1e6));
    CHECK(scaling_sequences(10000, 1.4, 0.5).d == doctest::Approx(719.69).epsilon(1e-5));
    CHECK(scaling_sequences(100, 1.5, 1.5).c == doctest::Approx(100.0));
    CHECK(scaling_sequences(100, 1.5, 1.0).c == doctest::Approx(460.517).epsilon(1e-5));
    for (double beta : {1.1, 1.5, 2.0})
        for (double alpha : {0.3, 1.0, 1.7}) {
            auto t = scaling_sequences(12345, beta, alpha);
            CHECK(std::abs(t.r * t.d / 12345.0 - 1.0) < 1e-12);
            CHECK(std::abs(std::pow(t.b, alpha) / t.d - 1.0) < 1e-12);
            CHECK(std::abs(t.a / (t.r * t.b) - 1.0) < 1e-12);
        }
    CHECK_THROWS_AS(scaling_sequences(0, 1.5, 0.5), std::invalid_argument);
}

TEST_CASE("rescaled walk and local time") {
    auto p = walk_from_increments(StepLaw::for_beta(2.0), {1, 1, -1});
    auto s = scaling_sequences(3, 2.0, 0.5);
    CHECK(rescaled_walk_at(p, s, 0.0) == 0.0);
    CHECK(rescaled_walk_at(p, s, 1.0) == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(rescaled_walk_at(p, s, 0.4) == rescaled_walk_at(p, s, 1.0 / 3.0));
    CHECK(rescaled_walk_at(p, s, 0.66) == rescaled_walk_at(p, s, 1.0 / 3.0));
    CHECK_THROWS_AS(rescaled_walk_at(p, s, 1.5), HorizonExceeded);
    auto lt = local_time(p, 3);
    CHECK(rescaled_local_time(lt, s, 1.0, 5.0) == 0.0);
    CHECK(rescaled_local_time(lt, s, 1.0, 0.0) == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(rescaled_local_time(p, s, 1.0, 0.6) == doctest::Approx(2.0 / std::sqrt(3.0)));
    // Negative x uses the floor.
    CHECK(rescaled_local_time(p, s, 1.0, -0.1) == 0.0);
    CHECK_THROWS_AS(rescaled_local_time(lt, s, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("stable normalization constants") {
    auto k = stable_norm_constants(1.5, 0.5, 0.5);
    CHECK(k.q == doctest::Approx(0.0));
    CHECK(k.c == doctest::Approx(std::sqrt(2.0 * std::numbers::pi)));
    for (double b = 1.05; b < 2.0; b += 0.1) CHECK(stable_norm_constants(b, 0.5, 0.5).c > 0.0);
    CHECK(stable_norm_constants(1.5, 1.0, 0.0).q == doctest::Approx(1.0));
    CHECK_THROWS_AS(stable_norm_constants(2.0, 0.5, 0.5), std::invalid_argument);
    CHECK(limit_scale(StepLaw::for_beta(2.0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
    for (double beta : {1.3, 1.5, 2.0}) {
        const double sigma = beta == 2.0 ? 1.0 / std::sqrt(2.0) : limit_scale(StepLaw::for_beta(beta));
        CHECK(stable_density_at_zero(beta, sigma) == doctest::Approx(oracle::stable_density_at_zero(beta, sigma)).epsilon(1e-8));
    }
    CHECK(stable_density_at_zero(1.5, limit_scale(StepLaw::for_beta(1.5))) == doctest::Approx(0.155724).epsilon(1e-5));
}

TEST_CASE("visits to the origin match the exact Fourier mean") {
    const int n = 1000, reps = 20000;
    RandomStream r(4, "lt");
    std::vector<double> v(reps);
    for (int i = 0; i < reps; ++i) {
        RandomStream ri = r.child(i);
        v[i] = double(visits(run_embedded_walk(n, StepLaw::for_beta(1.5), ri), n, 0));
    }
    auto [m, se] = oracle::mean_se(v);
    CHECK(std::abs(m - exact_mean_visits_to_origin(1.5, n)) < 3.0 * se);
}

TEST_CASE("rescaled local time at the origin approaches the moment limit") {
    const std::int64_t n = 10000;
    const int reps = 4000;
    const auto sb = scaling_sequences(n, 1.5, 0.5);
    RandomStream r(5, "lt");
    std::vector<double> v(reps);
    for (int i = 0; i < reps; ++i) {
        RandomStream ri = r.child(i);
        v[i] = rescaled_local_time(run_embedded_walk(n, StepLaw::for_beta(1.5), ri), sb, 1.0, 0.0);
    }
    const double sigma = limit_scale(StepLaw::for_beta(1.5));
    const double z = oracle::stable_density_at_zero(1.5, sigma);
    const double lim = z * std::tgamma(1.0 / 3.0) / std::tgamma(4.0 / 3.0);
    CHECK(local_time_moment_limit(1.5, sigma, 1.0) == doctest::Approx(lim).epsilon(1e-8));
    auto [m, se] = oracle::mean_se(v);
    CHECK(std::abs(m / lim - 1.0) < 0.07);
    // The exact prelimit mean sits 5.0% above the limit at this n.
    const double exact = exact_mean_visits_to_origin(1.5, int(n)) / sb.r;
    CHECK(std::abs(m - exact) < 3.0 * se);
    CHECK(exact / lim - 1.0 > 0.0);
    CHECK(exact / lim - 1.0 < 0.06);
}

TEST_CASE("rescaled marginals are self-similar across n") {
    SUBCASE("beta = 2, n = 1e4 against n = 4e4") {
        const int reps = 5000;
        std::vector<double> a(reps), b(reps);
        for (int i = 0; i < reps; ++i) {
            RandomStream ri = RandomStream(6, "ss2").child(i);
            auto p = run_embedded_walk(40000, StepLaw::for_beta(2.0), ri);
            a[i] = p.positions[10000] / 100.0;
            b[i] = p.positions[40000] / 200.0;
        }
        CHECK(ks_two_sample(EmpiricalCDF(a), EmpiricalCDF(b)).stat < 0.02);
    }
    SUBCASE("beta = 1.5, n = 1e4 against an independent n = 4e4 run") {
        const int reps = 5000;
        const auto s1 = scaling_sequences(10000, 1.5, 0.5), s2 = scaling_sequences(40000, 1.5, 0.5);
        std::vector<double> a(reps), b(reps);
        for (int i = 0; i < reps; ++i) {
            RandomStream ri = RandomStream(7, "ss15").child(i), rj = RandomStream(7, "ss15hi").child(i);
            a[i] = rescaled_walk_at(run_embedded_walk(10000, StepLaw::for_beta(1.5), ri), s1, 1.0);
            b[i] = rescaled_walk_at(run_embedded_walk(40000, StepLaw::for_beta(1.5), rj), s2, 1.0);
        }
        CHECK(ks_two_sample(EmpiricalCDF(a), EmpiricalCDF(b)).stat < 0.03);
    }
}
