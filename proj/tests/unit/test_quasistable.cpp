#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "trapsim/errors.hpp"
#include "trapsim/quasistable.hpp"
#include "trapsim/statistics.hpp"
#include "trapsim/walk.hpp"

using namespace trapsim;

namespace {
QuasistableConfig config(double beta, double alpha, double delta) {
    QuasistableConfig c;
    c.beta = beta;
    c.alpha = alpha;
    c.delta = delta;
    c.scale = limit_scale(StepLaw::for_beta(beta));
    return c;
}
}  // namespace

TEST_CASE("stable path skeleton") {
    RandomStream r(1, "z");
    auto z = simulate_stable_path(1.5, 1.0, 1.0, 0.01, r);
    CHECK(z.at(0.0) == 0.0);
    CHECK(z.steps() == 100);
    CHECK(z.horizon() == doctest::Approx(1.0));
    CHECK_THROWS_AS(z.at(1.5), HorizonExceeded);
    RandomStream r2(1, "z");
    auto y = simulate_stable_path(1.5, 1.0, 0.4, 0.01, r2);
    extend_stable_path(y, 1.0, r2);
    CHECK(y.values == z.values);
}

TEST_CASE("Brownian skeleton variance") {
    const int reps = 100000;
    double ss = 0.0;
    for (int i = 0; i < reps; ++i) {
        RandomStream r = RandomStream(2, "bm").child(i);
        const double z1 = simulate_stable_path(2.0, 0.7, 1.0, 0.1, r).values.back();
        ss += z1 * z1;
    }
    CHECK(ss / reps == doctest::Approx(2.0 * 0.49).epsilon(0.02));
}

TEST_CASE("stable path self-similarity in time") {
    const int reps = 10000;
    std::vector<double> a(reps), b(reps);
    for (int i = 0; i < reps; ++i) {
        RandomStream r = RandomStream(3, "ss").child(i);
        auto z = simulate_stable_path(1.5, 1.0, 2.0, 0.01, r);
        a[i] = z.at(2.0);
        b[i] = std::pow(2.0, 1.0 / 1.5) * z.at(1.0);
    }
    CHECK(ks_two_sample(EmpiricalCDF(a), EmpiricalCDF(b)).stat < 0.02);
}

TEST_CASE("local time field bookkeeping") {
    RandomStream r(4, "lt");
    auto z = simulate_stable_path(1.5, 1.0, 1.0, 1e-3, r);
    for (double t : {0.0, 0.1234, 0.5, 1.0}) {
        auto lt = estimate_local_time(z, t);
        CHECK(std::abs(lt.total_occupation() - t) < 1e-12);
        double bins = 0.0;
        for (const auto& b : lt.bins()) bins += b.second;
        CHECK(std::abs(bins - t) < 1e-12);
    }
    CHECK_THROWS_AS(estimate_local_time(z, 1.5), HorizonExceeded);
    auto flat = stable_path_from_values(1.5, 0.25, {0.0, 0.0, 0.0, 0.0, 0.0});
    auto lt = LocalTimeField(flat, 1.0, 0.5, 1.0);
    CHECK(lt.at(0.0) == doctest::Approx(1.0 / (2.0 * 0.5)));
    CHECK(lt.at(3.0) == 0.0);
    CHECK(lt.bin_density(0.2) == doctest::Approx(1.0));
    CHECK(lt.bin_density(-0.2) == 0.0);
}

TEST_CASE("kernel local time at the origin matches the moment limit") {
    const int reps = 3000;
    const double sigma = limit_scale(StepLaw::for_beta(1.5));
    std::vector<double> v(reps);
    for (int i = 0; i < reps; ++i) {
        RandomStream r = RandomStream(5, "phi").child(i);
        auto z = simulate_stable_path(1.5, sigma, 1.0, 1e-4, r);
        v[i] = estimate_local_time(z, 1.0).at(0.0);
    }
    const double lim = 3.0 * oracle::stable_density_at_zero(1.5, sigma);
    CHECK(std::abs(oracle::mean_se(v).first / lim - 1.0) < 0.07);
}

TEST_CASE("speed process from fixed traps") {
    auto flat = stable_path_from_values(1.5, 0.25, {0.0, 0.0, 0.0, 0.0, 0.0});
    auto one = DeepTrapSet::from_jumps(0.5, 0.1, 2.0, {0.0}, {2.0});
    auto s = build_speed_process(flat, one, 0.5, 0.0);
    CHECK(s.at(0.0) == 0.0);
    CHECK(s.at(1.0) == doctest::Approx(2.0));
    auto narrow = DeepTrapSet::from_jumps(0.5, 0.1, 0.3, {0.0}, {2.0});
    CHECK_THROWS_AS(build_speed_process(flat, narrow, 0.5, 0.0), WindowViolation);
    CHECK_THROWS_AS(one.refine(0.01), std::logic_error);
}

TEST_CASE("speed inverse") {
    std::vector<double> vals;
    for (int k = 0; k <= 10; ++k) vals.push_back(2.0 * k * 0.5);
    auto s = speed_from_values(0.5, vals);
    CHECK(invert_speed(s, 3.0) == doctest::Approx(1.5));
    CHECK(invert_speed(s, 0.0) == 0.0);
    CHECK_THROWS_AS(invert_speed(s, 10.0), HorizonExceeded);
    CHECK_THROWS_AS(speed_from_values(0.5, {0.0, 1.0, 0.5}), std::invalid_argument);
    // Flat pieces are jumped over by the right-continuous inverse.
    auto f = speed_from_values(1.0, {0.0, 1.0, 1.0, 2.0});
    CHECK(invert_speed(f, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("limit bundle invariants") {
    QuasistableSimulator sim(config(1.5, 0.5, 1e-3), RandomStream(6, "q"));
    sim.ensure_physical_horizon(2.0);
    const auto& b = sim.bundle();
    CHECK(b.physical_horizon() >= 2.4);
    const auto& s = b.speed().values;
    CHECK(s.front() == 0.0);
    for (std::size_t k = 1; k < s.size(); ++k) CHECK(s[k] >= s[k - 1]);
    CHECK(b.quasistable_at(0.0) == 0.0);
    CHECK(b.limit_trap_at(0.0) == 0.0);
    double prev = 0.0;
    for (double u = 0.0; u < 2.0; u += 0.01) {
        const double t = invert_speed(b.speed(), u);
        CHECK(t >= prev);
        prev = t;
        // S(S^-1(u)) = u up to one grid increment.
        const auto k = static_cast<std::size_t>(t / b.speed().dt);
        const double inc = s[std::min(k + 1, s.size() - 1)] - s[k];
        CHECK(std::abs(b.speed().at(t) - u) <= inc + 1e-12);
        const auto st = b.state_at(u);
        if (st.trap >= 0) {
            CHECK(st.g == b.traps().depths()[st.trap]);
            CHECK(st.y == b.traps().positions()[st.trap]);
            CHECK(std::abs(st.y - b.z().values[st.step]) <= b.eps());
        } else {
            CHECK(st.g == 0.0);
        }
        CHECK(b.max_trap_depth_until(u) >= st.g);
    }
    CHECK(b.exponents().gamma_s == doctest::Approx(5.0 / 3.0));
    CHECK(b.truncation_mass() > 0.0);
}

TEST_CASE("speed process equals the trap-weighted kernel local time") {
    QuasistableSimulator sim(config(2.0, 0.5, 1e-2), RandomStream(7, "dual"));
    const auto& b = sim.bundle();
    for (double t : {0.25, 0.5, 1.0}) {
        auto lt = b.local_time(t);
        double sum = 0.0;
        for (std::size_t j = 0; j < b.traps().size(); ++j) sum += b.traps().depths()[j] * lt.at(b.traps().positions()[j]);
        CHECK(b.speed().at(t) - b.speed().drift * t == doctest::Approx(sum).epsilon(1e-9));
    }
}

TEST_CASE("Y is frozen while the clock runs inside one trap") {
    QuasistableSimulator sim(config(2.0, 0.5, 1e-2), RandomStream(8, "freeze"));
    sim.ensure_physical_horizon(1.0);
    const auto& b = sim.bundle();
    int checked = 0;
    for (double u = 0.0; u < 1.0 && checked < 20; u += 0.013) {
        const auto st = b.state_at(u);
        if (st.trap < 0) continue;
        for (double du : {1e-9, 1e-8}) {
            const auto nx = b.state_at(u + du);
            if (nx.trap == st.trap) CHECK(nx.y == st.y);
        }
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("horizon growth keeps the path prefix") {
    QuasistableSimulator a(config(1.5, 0.5, 1e-2), RandomStream(9, "h")), b(config(1.5, 0.5, 1e-2), RandomStream(9, "h"));
    a.ensure_physical_horizon(5.0);
    b.ensure_path_horizon(a.bundle().z().horizon());
    CHECK(a.bundle().z().values == b.bundle().z().values);
    CHECK(a.bundle().speed().values == b.bundle().speed().values);
    const auto& z = a.bundle().z();
    CHECK(a.bundle().traps().window() >= z.max_abs() + a.bundle().eps());
}

TEST_CASE("delta refinement adds a positive increment of the small-jump scale") {
    const int reps = 200;
    double gap = 0.0, expected = 0.0;
    for (int i = 0; i < reps; ++i) {
        auto cfg = config(1.5, 0.5, 1e-2);
        cfg.compensate = false;
        QuasistableSimulator sim(cfg, RandomStream(10, "ref").child(i));
        const double coarse = sim.bundle().speed().at(1.0);
        sim.set_delta(1e-3);
        const double fine = sim.bundle().speed().at(1.0);
        CHECK(fine >= coarse);
        gap += fine - coarse;
        // E[sum of v phi(1, x)] over jumps in (delta/10, delta]: occupation time 1 times jump mass per length.
        expected += 0.5 * (std::pow(1e-2, 0.5) - std::pow(1e-3, 0.5)) / 0.5;
    }
    CHECK(gap / reps > 0.5 * expected / reps);
    CHECK(gap / reps < 2.0 * expected / reps);
}

TEST_CASE("G is positive more often as delta decreases") {
    double frac[3] = {0, 0, 0};
    const double ladder[3] = {1e-1, 1e-2, 1e-3};
    for (int i = 0; i < 50; ++i) {
        QuasistableSimulator sim(config(1.5, 0.5, 1e-3), RandomStream(11, "g").child(i));
        for (int l = 0; l < 3; ++l) {
            sim.set_delta(ladder[l]);
            sim.ensure_physical_horizon(1.0);
            int pos = 0;
            for (int k = 1; k <= 100; ++k) pos += sim.bundle().limit_trap_at(k / 100.0) > 0.0;
            frac[l] += pos / 100.0;
        }
    }
    CHECK(frac[0] < frac[1]);
    CHECK(frac[1] < frac[2]);
}

TEST_CASE("self-similarity exponents") {
    auto e = selfsim_exponents(0.5, 2.0);
    CHECK(e.gamma_s == doctest::Approx(1.5));
    CHECK(e.h_y == doctest::Approx(1.0 / 3.0));
    CHECK(e.h_g == doctest::Approx(2.0 / 3.0));
    CHECK(selfsim_exponents(0.999999, 2.0).h_y == doctest::Approx(0.5).epsilon(1e-5));
    auto f = selfsim_exponents(0.5, 1.5);
    CHECK(f.gamma_s == doctest::Approx(5.0 / 3.0));
    CHECK(f.h_y == doctest::Approx(0.4));
    // Chain rule: H_Y = 1 / (beta gamma_S) and H_G = H_Y / alpha.
    for (double a : {0.2, 0.5, 0.8})
        for (double bt : {1.2, 1.5, 2.0}) {
            auto g = selfsim_exponents(a, bt);
            CHECK(g.h_y == doctest::Approx(1.0 / (bt * g.gamma_s)));
            CHECK(g.h_g == doctest::Approx(g.h_y / a));
            CHECK(g.h_y_stated == doctest::Approx(g.h_y * bt * bt));
        }
    CHECK_THROWS_AS(selfsim_exponents(1.0, 1.5), std::invalid_argument);
}
