#include "trapsim/experiments/simulate.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "trapsim/parallel.hpp"
#include "trapsim/quasistable.hpp"
#include "trapsim/trap_walk.hpp"
#include "trapsim/walk.hpp"

namespace trapsim::experiments {

namespace {

constexpr double kDefaultBeta = 1.5;
constexpr double kDefaultAlpha = 0.5;
constexpr std::int64_t kDefaultN = 10000;
constexpr std::int64_t kDefaultReplicas = 4;
constexpr double kDefaultLimitDelta = 1e-3;
constexpr double kDefaultLimitDt = 1e-4;

std::string number_tag(double x) {
    std::ostringstream ss;
    ss << x;
    return ss.str();
}

std::vector<double> time_grid(const ExperimentConfig& cfg) {
    std::vector<double> g;
    for (std::int64_t k = 0; k <= cfg.grid_points; ++k)
        g.push_back(cfg.horizon * static_cast<double>(k) / static_cast<double>(cfg.grid_points));
    return g;
}

RandomStream base_stream(SimulateKind kind, const ExperimentConfig& cfg, double alpha) {
    return RandomStream(cfg.seed, "simulate/" + to_string(kind) + "/alpha=" + number_tag(alpha));
}

QuasistableConfig limit_config(const ExperimentConfig& cfg, double alpha, double beta) {
    QuasistableConfig q;
    q.alpha = alpha;
    q.beta = beta;
    q.scale = limit_scale(StepLaw::for_beta(beta));
    q.dt = cfg.dt.value_or(kDefaultLimitDt);
    q.delta = cfg.deltas.empty() ? kDefaultLimitDelta : *std::min_element(cfg.deltas.begin(), cfg.deltas.end());
    return q;
}

using Rows = std::vector<std::vector<double>>;

}  // namespace

SimulateKind simulate_kind_from_string(const std::string& s) {
    if (s == "clock") return SimulateKind::clock;
    if (s == "walk") return SimulateKind::walk;
    if (s == "trap-process") return SimulateKind::trap_process;
    if (s == "limit") return SimulateKind::limit;
    throw std::invalid_argument("simulate: unknown kind '" + s + "'");
}

std::string to_string(SimulateKind k) {
    switch (k) {
        case SimulateKind::clock: return "clock";
        case SimulateKind::walk: return "walk";
        case SimulateKind::trap_process: return "trap-process";
        case SimulateKind::limit: return "limit";
    }
    return "?";
}

CsvTable simulate_table(SimulateKind kind, const ExperimentConfig& cfg, double alpha) {
    cfg.validate();
    const double beta = cfg.beta.value_or(kDefaultBeta);
    const std::int64_t n = cfg.n.value_or(kDefaultN);
    const std::int64_t reps = cfg.replicas.value_or(kDefaultReplicas);
    const StepLaw law = StepLaw::for_beta(beta);
    const ScalingBundle sb = scaling_sequences(n, beta, alpha);
    const ClockRegime regime = regime_for(alpha);
    const double time_scale = clock_scale(sb, regime);
    const auto grid = time_grid(cfg);
    const RandomStream base = base_stream(kind, cfg, alpha);

    std::vector<std::string> columns;
    switch (kind) {
        case SimulateKind::clock: columns = {"t", "replica", "clock"}; break;
        case SimulateKind::walk: columns = {"t", "replica", "x"}; break;
        case SimulateKind::trap_process: columns = {"t", "replica", "x", "depth"}; break;
        case SimulateKind::limit: columns = {"t", "replica", "z", "s", "y", "g"}; break;
    }
    CsvTable table(columns);
    table.set_meta("kind", to_string(kind));
    table.set_meta("beta", format_double(beta));
    table.set_meta("alpha", format_double(alpha));
    table.set_meta("seed", std::to_string(cfg.seed));
    table.set_meta("replicas", std::to_string(reps));
    table.set_meta("stream", base.label());

    std::vector<Rows> per_replica;
    if (kind == SimulateKind::limit) {
        require_alpha_below_one(alpha, "simulate limit");
        const QuasistableConfig q = limit_config(cfg, alpha, beta);
        table.set_meta("delta", format_double(q.delta));
        table.set_meta("dt", format_double(q.dt));
        table.set_meta("time", "z and s at path time t; y and g at physical time t");
        per_replica = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
            QuasistableSimulator sim(q, base.child(i));
            sim.ensure_path_horizon(cfg.horizon);
            sim.ensure_physical_horizon(cfg.horizon);
            const auto& b = sim.bundle();
            Rows rows;
            for (double t : grid) {
                const LimitState st = b.state_at(t);
                rows.push_back({t, static_cast<double>(i), b.z().at(t), b.speed().at(t), st.y, st.g});
            }
            return rows;
        }, cfg.threads);
    } else {
        table.set_meta("n", std::to_string(n));
        table.set_meta("step_mode", to_string(law.mode));
        if (kind == SimulateKind::clock) table.set_meta("scale", format_double(time_scale));
        if (kind == SimulateKind::walk) table.set_meta("scale", format_double(sb.d));
        if (kind == SimulateKind::trap_process) {
            table.set_meta("time_scale", format_double(time_scale));
            table.set_meta("space_scale", format_double(sb.d));
            table.set_meta("depth_scale", format_double(sb.b));
        }
        const auto steps = static_cast<std::int64_t>(std::ceil(static_cast<double>(n) * cfg.horizon));
        per_replica = parallel_map(static_cast<std::size_t>(reps), [&](std::size_t i) {
            TrapModelRun run(law, TrapLaw(alpha), base.child(i));
            Rows rows;
            const double r = static_cast<double>(i);
            if (kind == SimulateKind::trap_process) {
                run.extend_to_time(cfg.horizon * time_scale);
                for (double t : grid)
                    rows.push_back({t, r, static_cast<double>(run.position_at(t * time_scale)) / sb.d,
                                    run.depth_at_time(t * time_scale) / sb.b});
                return rows;
            }
            run.extend_steps(steps);
            for (double t : grid) {
                const double v = kind == SimulateKind::clock ? rescaled_clock(run.clock(), sb, regime, t)
                                                             : rescaled_walk_at(run.walk(), sb, t);
                rows.push_back({t, r, v});
            }
            return rows;
        }, cfg.threads);
    }
    for (const auto& rows : per_replica)
        for (const auto& row : rows) table.add_row(row);
    return table;
}

RunManifest cmd_simulate(SimulateKind kind, const ExperimentConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    const std::vector<double> alphas = cfg.alphas.empty() ? std::vector<double>{kDefaultAlpha} : cfg.alphas;
    if (kind == SimulateKind::limit)
        for (double a : alphas) require_alpha_below_one(a, "simulate limit");
    RunManifest m;
    m.command = "simulate " + to_string(kind);
    m.config = cfg.to_json();
    m.code_version = code_version();
    m.root_seed = cfg.seed;
    const std::int64_t reps = cfg.replicas.value_or(kDefaultReplicas);
    for (double a : alphas) {
        const std::string stem = to_string(kind) + "_alpha" + number_tag(a);
        m.files.push_back(write_output(cfg.out, stem + ".csv", simulate_table(kind, cfg, a).to_string()));
        auto seeds = replica_seed_table(base_stream(kind, cfg, a), reps);
        m.replica_seeds.insert(m.replica_seeds.end(), seeds.begin(), seeds.end());
        if (kind == SimulateKind::limit) {
            const QuasistableConfig q = limit_config(cfg, a, cfg.beta.value_or(kDefaultBeta));
            const RandomStream base = base_stream(kind, cfg, a);
            nlohmann::json diag = nlohmann::json::array();
            for (std::int64_t i = 0; i < reps; ++i) {
                QuasistableSimulator sim(q, base.child(static_cast<std::uint64_t>(i)));
                sim.ensure_path_horizon(cfg.horizon);
                sim.ensure_physical_horizon(cfg.horizon);
                const auto& b = sim.bundle();
                diag.push_back({{"replica", i},
                                {"delta", q.delta},
                                {"traps", b.traps().size()},
                                {"window", b.traps().window()},
                                {"truncation_mass", b.truncation_mass()},
                                {"drift", b.speed().drift},
                                {"path_horizon", b.z().horizon()},
                                {"physical_horizon", b.physical_horizon()}});
            }
            nlohmann::json report = {{"alpha", a}, {"beta", q.beta}, {"dt", q.dt}, {"replicas", diag}};
            m.files.push_back(write_output(cfg.out, stem + "_truncation.json", report.dump(2) + "\n"));
        }
    }
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_output(cfg.out, to_string(kind) + "_manifest.json", m.to_json().dump(2) + "\n");
    return m;
}

}  // namespace trapsim::experiments
