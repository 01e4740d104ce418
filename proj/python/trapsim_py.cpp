#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "trapsim/csv.hpp"
#include "trapsim/experiments/criteria.hpp"
#include "trapsim/experiments/simulate.hpp"
#include "trapsim/quasistable.hpp"
#include "trapsim/statistics.hpp"
#include "trapsim/trap_walk.hpp"
#include "trapsim/walk.hpp"

namespace py = pybind11;
using namespace trapsim;
namespace ex = trapsim::experiments;

namespace {

ex::ExperimentConfig make_config(std::optional<double> beta, std::optional<std::int64_t> n,
                                 std::optional<std::int64_t> replicas, std::uint64_t seed) {
    ex::ExperimentConfig c;
    c.beta = beta;
    c.n = n;
    c.replicas = replicas;
    c.seed = seed;
    return c;
}

}  // namespace

PYBIND11_MODULE(_trapsim, m) {
    m.doc() = "Trap model on a heavy-tailed walk and its quasistable limit";

    py::class_<RandomStream>(m, "RandomStream")
        .def(py::init<std::uint64_t, std::string>(), py::arg("seed"), py::arg("label") = "root")
        .def("child", py::overload_cast<const std::string&>(&RandomStream::child, py::const_))
        .def("child", py::overload_cast<std::uint64_t>(&RandomStream::child, py::const_))
        .def("uniform", &RandomStream::uniform)
        .def_property_readonly("label", &RandomStream::label);

    py::class_<ScalingBundle>(m, "ScalingBundle")
        .def_readonly("n", &ScalingBundle::n)
        .def_readonly("d", &ScalingBundle::d)
        .def_readonly("r", &ScalingBundle::r)
        .def_readonly("b", &ScalingBundle::b)
        .def_readonly("a", &ScalingBundle::a)
        .def_readonly("c", &ScalingBundle::c);
    m.def("scaling_sequences", &scaling_sequences, py::arg("n"), py::arg("beta"), py::arg("alpha"));

    m.def("embedded_walk", [](std::int64_t n, double beta, std::uint64_t seed) {
        RandomStream r(seed, "py/walk");
        return run_embedded_walk(n, StepLaw::for_beta(beta), r).positions;
    }, py::arg("n"), py::arg("beta"), py::arg("seed") = 1);

    m.def("limit_scale", [](double beta) { return limit_scale(StepLaw::for_beta(beta)); }, py::arg("beta"));
    m.def("stable_density_at_zero", &stable_density_at_zero, py::arg("beta"), py::arg("sigma"));
    m.def("local_time_moment_limit", &local_time_moment_limit, py::arg("beta"), py::arg("sigma"), py::arg("t") = 1.0);

    m.def("selfsim_exponents", [](double alpha, double beta) {
        const auto e = selfsim_exponents(alpha, beta);
        return py::dict(py::arg("gamma_s") = e.gamma_s, py::arg("h_y") = e.h_y, py::arg("h_g") = e.h_g,
                        py::arg("h_y_stated") = e.h_y_stated, py::arg("h_g_stated") = e.h_g_stated);
    }, py::arg("alpha"), py::arg("beta"));

    m.def("integrated_aging_formula", [](double theta, double pi, const std::function<double(double)>& R, double theta_max) {
        const auto r = integrated_aging_formula(theta, pi, R, theta_max);
        return std::make_pair(r.value, r.tail_residual);
    }, py::arg("theta"), py::arg("pi"), py::arg("R"), py::arg("theta_max") = 0.0);

    m.def("max_trap_limit_cdf", &max_trap_limit_cdf, py::arg("x"), py::arg("alpha"));

    m.def("ks_two_sample", [](std::vector<double> a, std::vector<double> b) {
        const auto r = ks_two_sample(EmpiricalCDF(std::move(a)), EmpiricalCDF(std::move(b)));
        return std::make_pair(r.stat, r.p_value);
    });

    m.def("limit_states", [](double alpha, double beta, double delta, const std::vector<double>& times, std::uint64_t seed) {
        QuasistableConfig q;
        q.alpha = alpha;
        q.beta = beta;
        q.scale = limit_scale(StepLaw::for_beta(beta));
        q.delta = delta;
        QuasistableSimulator sim(q, RandomStream(seed, "py/limit"));
        double tmax = 0.0;
        for (double t : times) tmax = std::max(tmax, t);
        sim.ensure_physical_horizon(tmax);
        std::vector<std::pair<double, double>> out;
        for (double t : times) {
            const auto st = sim.bundle().state_at(t);
            out.emplace_back(st.y, st.g);
        }
        return out;
    }, py::arg("alpha"), py::arg("beta"), py::arg("delta"), py::arg("times"), py::arg("seed") = 1);

    m.def("simulate_csv", [](const std::string& kind, double alpha, std::optional<double> beta, std::optional<std::int64_t> n,
                             std::optional<std::int64_t> replicas, std::uint64_t seed, std::int64_t grid_points, double horizon) {
        auto c = make_config(beta, n, replicas, seed);
        c.grid_points = grid_points;
        c.horizon = horizon;
        py::gil_scoped_release release;
        return ex::simulate_table(ex::simulate_kind_from_string(kind), c, alpha).to_string();
    }, py::arg("kind"), py::arg("alpha"), py::arg("beta") = py::none(), py::arg("n") = py::none(),
       py::arg("replicas") = py::none(), py::arg("seed") = 20240917, py::arg("grid_points") = 200, py::arg("horizon") = 1.0);

    m.def("parse_csv", [](const std::string& text) {
        std::istringstream in(text);
        auto p = parse_csv(in);
        py::dict meta;
        for (const auto& [k, v] : p.meta) meta[py::str(k)] = v;
        return py::make_tuple(meta, p.columns, p.rows);
    });

    m.def("_run_criterion_json", [](int id, std::optional<double> beta, std::optional<std::int64_t> n,
                                    std::optional<std::int64_t> replicas, std::uint64_t seed) {
        const auto c = make_config(beta, n, replicas, seed);
        py::gil_scoped_release release;
        auto r = ex::run_criterion(id, c);
        auto j = r.to_json();
        j["seconds"] = r.seconds;
        return j.dump();
    }, py::arg("id"), py::arg("beta") = py::none(), py::arg("n") = py::none(), py::arg("replicas") = py::none(),
       py::arg("seed") = 20240917);

    m.attr("CSV_SCHEMA") = kCsvSchemaVersion;
}
