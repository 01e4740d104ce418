#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trapsim/experiments/commands.hpp"
#include "trapsim/experiments/config.hpp"
#include "trapsim/experiments/manifest.hpp"
#include "trapsim/experiments/simulate.hpp"
#include "trapsim/parallel.hpp"

namespace ex = trapsim::experiments;

namespace {

// Flag values layered over the config file; unset flags leave the file alone.
struct Overrides {
    std::string config_path;
    std::optional<double> beta;
    std::vector<double> alphas;
    std::optional<std::int64_t> n;
    std::optional<std::int64_t> replicas;
    std::optional<std::uint64_t> seed;
    std::vector<double> pis;
    std::vector<double> thetas;
    std::vector<double> deltas;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::vector<std::string> suites;

    void attach(CLI::App* app, bool with_suites) {
        app->add_option("--config", config_path, "INI config file")->check(CLI::ExistingFile);
        app->add_option("--beta", beta, "walk index in (1,2]");
        app->add_option("--alpha", alphas, "trap index in (0,2]; comma list for simulate")->delimiter(',');
        app->add_option("--n", n, "scaling parameter");
        app->add_option("--replicas", replicas, "replica count");
        app->add_option("--seed", seed, "root seed");
        app->add_option("--pi", pis, "BE correlation parameters")->delimiter(',');
        app->add_option("--theta", thetas, "aging ratios")->delimiter(',');
        app->add_option("--delta", deltas, "truncation levels")->delimiter(',');
        app->add_option("--out", out, "output directory");
        app->add_option("--threads", threads, "worker threads (default TRAPSIM_THREADS or all cores)");
        if (with_suites) app->add_option("--suites", suites, "suites to aggregate")->delimiter(',');
    }

    ex::ExperimentConfig resolve() const {
        ex::ExperimentConfig c = config_path.empty() ? ex::ExperimentConfig{} : ex::ExperimentConfig::from_ini_file(config_path);
        if (beta) c.beta = beta;
        if (!alphas.empty()) c.alphas = alphas;
        if (n) c.n = n;
        if (replicas) c.replicas = replicas;
        if (seed) c.seed = *seed;
        if (!pis.empty()) c.pis = pis;
        if (!thetas.empty()) c.thetas = thetas;
        if (!deltas.empty()) c.deltas = deltas;
        if (out) c.out = *out;
        if (threads) c.threads = *threads;
        if (!suites.empty()) c.suites = suites;
        c.validate();
        if (c.threads > 0) trapsim::set_default_threads(c.threads);
        return c;
    }
};

void emit(const nlohmann::json& j, const std::string& dir, const std::string& name) {
    ex::write_output(dir, name, j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bouchaud trap model and quasistable limit simulator"};
    app.require_subcommand(1);

    Overrides sim_o, ver_o, rep_o;
    std::string kind, suite;
    auto* sim = app.add_subcommand("simulate", "write trajectory CSVs and a manifest");
    sim->add_option("kind", kind, "clock | walk | trap-process | limit")->required();
    sim_o.attach(sim, false);
    auto* ver = app.add_subcommand("verify", "run one acceptance suite and print JSON verdicts");
    ver->add_option("suite", suite, "clock-lln | selfsim | aging | localization | max-trap | limit-match")->required();
    ver_o.attach(ver, false);
    auto* rep = app.add_subcommand("report", "aggregate several suites into one JSON report");
    rep_o.attach(rep, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            const auto cfg = sim_o.resolve();
            const auto m = ex::cmd_simulate(ex::simulate_kind_from_string(kind), cfg);
            for (const auto& f : m.files) std::cout << f.sha256 << "  " << cfg.out << "/" << f.path << "\n";
            return EXIT_SUCCESS;
        }
        if (*ver) {
            const auto cfg = ver_o.resolve();
            const auto v = ex::cmd_verify(suite, cfg);
            emit(v, cfg.out, "verify_" + suite + ".json");
            return v["pass"].get<bool>() ? EXIT_SUCCESS : EXIT_FAILURE;
        }
        const auto cfg = rep_o.resolve();
        const auto r = ex::cmd_report(cfg);
        emit(r, cfg.out, "report.json");
        return r["pass"].get<bool>() ? EXIT_SUCCESS : EXIT_FAILURE;
    } catch (const std::exception& e) {
        std::cerr << "trapsim: " << e.what() << "\n";
        return 2;
    }
}
