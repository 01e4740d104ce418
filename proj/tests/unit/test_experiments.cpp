#include <filesystem>
#include <set>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "trapsim/csv.hpp"
#include "trapsim/experiments/commands.hpp"
#include "trapsim/experiments/config.hpp"
#include "trapsim/experiments/criteria.hpp"
#include "trapsim/experiments/manifest.hpp"
#include "trapsim/experiments/simulate.hpp"

namespace ex = trapsim::experiments;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("trapsim_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("config file with sections and lists") {
    std::istringstream in(
        "[model]\nbeta = 1.4\nalpha = 0.3, 0.5,0.7\nn = 5000\n"
        "[run]\nreplicas = 7\nseed = 99\n"
        "[limit]\ndelta = 0.1,0.01\n"
        "[report]\nsuites = max-trap, aging\n");
    auto c = ex::ExperimentConfig::from_ini(in);
    CHECK(*c.beta == doctest::Approx(1.4));
    CHECK(c.alphas == std::vector<double>{0.3, 0.5, 0.7});
    CHECK(*c.n == 5000);
    CHECK(*c.replicas == 7);
    CHECK(c.seed == 99);
    CHECK(c.deltas.size() == 2);
    CHECK(c.suites == std::vector<std::string>{"max-trap", "aging"});
    CHECK(!c.dt);
    auto j = c.to_json();
    CHECK(j["seed"] == 99);
    CHECK(j["dt"].is_null());
}

TEST_CASE("config validation") {
    auto bad = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(ex::ExperimentConfig::from_ini(in), std::invalid_argument);
    };
    bad("[model]\nbeta = 2.5\n");
    bad("[model]\nbeta = 1\n");
    bad("[model]\nalpha = 0\n");
    bad("[model]\nn = 0\n");
    bad("[run]\nreplicas = 0\n");
    bad("[model]\ngamma = 1\n");
    bad("[model]\nalpha = 0.5x\n");
    bad("[aging]\npi = 1.5\n");
    CHECK_THROWS_AS(ex::require_alpha_below_one(1.0, "x"), std::invalid_argument);
    CHECK_THROWS_AS(ex::require_alpha_at_least_one(0.5, "x"), std::invalid_argument);
    CHECK_NOTHROW(ex::require_alpha_at_least_one(2.0, "x"));
}

TEST_CASE("sha256 digests") {
    CHECK(ex::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(ex::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("simulated trajectories follow the CSV schema") {
    ex::ExperimentConfig cfg;
    cfg.beta = 1.4;
    cfg.n = 1000;
    cfg.replicas = 3;
    cfg.grid_points = 20;
    for (auto kind : {ex::SimulateKind::clock, ex::SimulateKind::walk, ex::SimulateKind::trap_process,
                      ex::SimulateKind::limit}) {
        cfg.dt = 1e-3;
        std::istringstream in(ex::simulate_table(kind, cfg, 0.5).to_string());
        auto p = trapsim::parse_csv(in);
        CHECK(p.meta_value("schema") == trapsim::kCsvSchemaVersion);
        CHECK(p.meta_value("kind") == ex::to_string(kind));
        CHECK(p.meta_value("seed") == std::to_string(cfg.seed));
        CHECK(p.columns.at(0) == "t");
        CHECK(p.columns.at(1) == "replica");
        CHECK(p.rows.size() == 3 * 21);
        CHECK(p.rows.front()[0] == 0.0);
        CHECK(p.rows[20][0] == doctest::Approx(1.0));
        // Every process starts at zero except the trap process, which starts at the origin's depth.
        for (std::size_t c = 2; c < p.columns.size(); ++c) {
            if (p.columns[c] == "depth")
                CHECK(p.rows.front()[c] >= 1.0 / std::stod(p.meta_value("depth_scale")));
            else
                CHECK(p.rows.front()[c] == 0.0);
        }
    }
    CHECK_THROWS_AS(ex::simulate_table(ex::SimulateKind::limit, cfg, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(ex::simulate_kind_from_string("movie"), std::invalid_argument);
}

TEST_CASE("clock trajectories are nondecreasing and match across thread counts") {
    ex::ExperimentConfig cfg;
    cfg.n = 2000;
    cfg.replicas = 4;
    cfg.threads = 1;
    const auto one = ex::simulate_table(ex::SimulateKind::clock, cfg, 0.7).to_string();
    cfg.threads = 3;
    const auto three = ex::simulate_table(ex::SimulateKind::clock, cfg, 0.7).to_string();
    CHECK(one == three);
    std::istringstream in(one);
    auto p = trapsim::parse_csv(in);
    for (std::size_t k = 1; k < p.rows.size(); ++k)
        if (p.rows[k][1] == p.rows[k - 1][1]) CHECK(p.rows[k][2] >= p.rows[k - 1][2]);
}

TEST_CASE("simulate writes one file per alpha and a reproducible manifest") {
    ex::ExperimentConfig cfg;
    cfg.beta = 1.4;
    cfg.alphas = {0.3, 0.9};
    cfg.n = 500;
    cfg.replicas = 2;
    cfg.out = scratch("sim_a").string();
    auto m1 = ex::cmd_simulate(ex::SimulateKind::clock, cfg);
    REQUIRE(m1.files.size() == 2);
    for (const auto& f : m1.files) CHECK(ex::sha256_file((fs::path(cfg.out) / f.path).string()) == f.sha256);
    CHECK(m1.replica_seeds.size() == 4);
    auto j = nlohmann::json::parse(slurp(fs::path(cfg.out) / "clock_manifest.json"));
    auto back = ex::RunManifest::from_json(j);
    CHECK(back.files.size() == 2);
    CHECK(back.root_seed == cfg.seed);
    cfg.out = scratch("sim_b").string();
    auto m2 = ex::cmd_simulate(ex::SimulateKind::clock, cfg);
    for (std::size_t i = 0; i < 2; ++i) CHECK(m1.files[i].sha256 == m2.files[i].sha256);
    cfg.seed += 1;
    auto m3 = ex::cmd_simulate(ex::SimulateKind::clock, cfg);
    CHECK(m1.files[0].sha256 != m3.files[0].sha256);
}

TEST_CASE("limit simulation writes truncation diagnostics") {
    ex::ExperimentConfig cfg;
    cfg.alphas = {0.5};
    cfg.replicas = 2;
    cfg.dt = 1e-3;
    cfg.deltas = {1e-2};
    cfg.out = scratch("lim").string();
    auto m = ex::cmd_simulate(ex::SimulateKind::limit, cfg);
    REQUIRE(m.files.size() == 2);
    auto d = nlohmann::json::parse(slurp(fs::path(cfg.out) / m.files[1].path));
    CHECK(d["replicas"].size() == 2);
    CHECK(d["replicas"][0]["delta"] == 1e-2);
    CHECK(d["replicas"][0]["physical_horizon"].get<double>() >= 1.0);
}

TEST_CASE("suites and criteria") {
    CHECK(ex::suite_names().size() == 6);
    std::set<int> all;
    for (const auto& s : ex::suite_names())
        for (int id : ex::suite_criteria(s)) all.insert(id);
    CHECK(all.size() == 12);
    CHECK_THROWS_AS(ex::suite_criteria("nope"), std::invalid_argument);
    CHECK_THROWS_AS(ex::run_criterion(13, {}), std::invalid_argument);
}

TEST_CASE("verify emits measured statistics and pass flags") {
    ex::ExperimentConfig cfg;
    cfg.replicas = 300;
    auto v = ex::cmd_verify("max-trap", cfg);
    CHECK(v["suite"] == "max-trap");
    REQUIRE(v["criteria"].size() == 1);
    CHECK(v["criteria"][0]["id"] == 3);
    CHECK(v["criteria"][0]["measured"]["ks_vs_limit"].get<double>() < 0.1);
    CHECK(v["pass"].is_boolean());
    // The finite-mean clock check compares against E tau0 = 2 at alpha = 2.
    ex::ExperimentConfig c2;
    c2.alphas = {2.0};
    c2.n = 2000;
    c2.replicas = 5;
    auto r = ex::run_criterion(1, c2);
    CHECK(r.measured["slope"] == 2.0);
    c2.alphas = {0.5};
    CHECK_THROWS_AS(ex::run_criterion(1, c2), std::invalid_argument);
}

TEST_CASE("report aggregation") {
    ex::ExperimentConfig cfg;
    auto empty = ex::cmd_report(cfg);
    CHECK(empty["suites"].empty());
    CHECK(empty["pass"] == true);
    CHECK(empty["config"] == cfg.to_json());
    cfg.suites = {"max-trap"};
    cfg.replicas = 200;
    auto a = ex::cmd_report(cfg);
    auto b = ex::cmd_report(cfg);
    CHECK(a["digest"] == b["digest"]);
    CHECK(a["config"] == cfg.to_json());
    cfg.seed += 1;
    CHECK(ex::cmd_report(cfg)["digest"] != a["digest"]);
    cfg.suites = {"max-trap", "bogus"};
    CHECK_THROWS_AS(ex::cmd_report(cfg), std::invalid_argument);
}
