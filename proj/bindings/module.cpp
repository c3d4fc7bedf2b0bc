#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wardrop/json_io.hpp"
#include "wardrop/ksp.hpp"
#include "wardrop/poa.hpp"
#include "wardrop/scenario.hpp"
#include "wardrop/tntp.hpp"

namespace py = pybind11;
using namespace wardrop;

namespace {

// Dicts keep the python surface thin; heavyweight analysis stays in C++.
py::object json_to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

TrafficLimit limit_from_str(const std::string& s) {
    if (s == "light") return TrafficLimit::Light;
    if (s == "heavy") return TrafficLimit::Heavy;
    throw ParseError("limit must be 'light' or 'heavy'");
}

Benchmark benchmark_from_str(const std::string& s) {
    if (s == "one" || s == "1") return Benchmark::constant_one();
    if (s.rfind("edge:", 0) == 0) return Benchmark::edge_cost(std::stoi(s.substr(5)));
    if (s.rfind("x^", 0) == 0) return Benchmark::monomial(std::stod(s.substr(2)));
    if (s == "x") return Benchmark::monomial(1.0);
    throw ParseError("benchmark must be one of: x, x^Q, one, edge:K");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Routing games: equilibria, optima, and price-of-anarchy asymptotics";

    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
    py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_RuntimeError);

    py::class_<Network>(m, "Network")
        .def_property_readonly("num_vertices", &Network::num_vertices)
        .def_property_readonly("num_edges", &Network::num_edges)
        .def_property_readonly("num_pairs", &Network::num_pairs)
        .def_property_readonly("num_paths", &Network::num_paths)
        .def("to_json", [](const Network& n) { return json_to_py(network_to_json(n)); });

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("net", &Scenario::net)
        .def_readonly("rates", &Scenario::rates);

    m.def(
        "scenario",
        [](const std::string& name, int d1, int d2, int d) {
            ScenarioParams p;
            p.d1 = d1;
            p.d2 = d2;
            p.d = d;
            return builtin_scenario(name, p);
        },
        py::arg("name"), py::arg("d1") = 1, py::arg("d2") = 2, py::arg("d") = 2);
    m.def("scenario_names", &builtin_scenario_names);

    m.def("network_from_json", [](const py::object& obj) {
        py::module_ pyjson = py::module_::import("json");
        const std::string text = pyjson.attr("dumps")(obj).cast<std::string>();
        NetworkDocument nd = network_from_json(json::parse(text));
        return py::make_tuple(std::move(nd.net),
                              nd.inflows ? py::cast(*nd.inflows) : py::none().cast<py::object>());
    });

    m.def(
        "solve",
        [](const Network& net, const std::vector<double>& inflows, const std::string& objective,
           double tol, int max_iters) {
            SolverConfig cfg;
            cfg.rel_gap_tol = tol;
            cfg.max_iterations = max_iters;
            const Demand demand(inflows);
            const SolveResult r = objective == "so" ? solve_optimum(net, demand, cfg)
                                                    : solve_wardrop(net, demand, cfg);
            return json_to_py(solve_result_to_json(r));
        },
        py::arg("net"), py::arg("inflows"), py::arg("objective") = "we", py::arg("tol") = 1e-10,
        py::arg("max_iters") = 200000);

    m.def(
        "brute_force",
        [](const Network& net, const std::vector<double>& inflows, const std::string& objective,
           int resolution) {
            const SolveResult r = brute_force_solve(
                net, Demand(inflows),
                objective == "so" ? SolveObjective::Social : SolveObjective::Beckmann, resolution);
            return json_to_py(solve_result_to_json(r));
        },
        py::arg("net"), py::arg("inflows"), py::arg("objective") = "we",
        py::arg("resolution") = 1000);

    m.def(
        "price_of_anarchy",
        [](const Network& net, const std::vector<double>& inflows, double tol) {
            SolverConfig cfg;
            cfg.rel_gap_tol = tol;
            return price_of_anarchy(net, inflows, cfg);
        },
        py::arg("net"), py::arg("inflows"), py::arg("tol") = 1e-10);

    m.def(
        "sweep",
        [](const Network& net, const std::vector<double>& rates, double from, double to,
           int points, double tol, int jobs) {
            GridSpec grid{from, to, points};
            SolverConfig cfg;
            cfg.rel_gap_tol = tol;
            return json_to_py(sweep_to_json(sweep(net, rates, grid, cfg, jobs)));
        },
        py::arg("net"), py::arg("rates"), py::arg("from_m"), py::arg("to_m"),
        py::arg("points") = 20, py::arg("tol") = 1e-10, py::arg("jobs") = 1);

    m.def(
        "sweep_csv",
        [](const Network& net, const std::vector<double>& rates, double from, double to,
           int points, double tol, int jobs) {
            GridSpec grid{from, to, points};
            SolverConfig cfg;
            cfg.rel_gap_tol = tol;
            return sweep(net, rates, grid, cfg, jobs).to_csv();
        },
        py::arg("net"), py::arg("rates"), py::arg("from_m"), py::arg("to_m"),
        py::arg("points") = 20, py::arg("tol") = 1e-10, py::arg("jobs") = 1);

    m.def(
        "fit_power_law",
        [](const Network& net, const std::vector<double>& rates, double from, double to,
           int points, const std::string& limit, double tol) {
            GridSpec grid{from, to, points};
            SolverConfig cfg;
            cfg.rel_gap_tol = tol;
            const SweepResult sw = sweep(net, rates, grid, cfg, 1);
            return json_to_py(rate_estimate_to_json(fit_power_law(sw, limit_from_str(limit))));
        },
        py::arg("net"), py::arg("rates"), py::arg("from_m"), py::arg("to_m"), py::arg("points"),
        py::arg("limit"), py::arg("tol") = 1e-10);

    m.def(
        "classify",
        [](const Network& net, const std::string& limit, const std::string& benchmark) {
            const TrafficLimit w = limit_from_str(limit);
            const Benchmark bench =
                benchmark.empty() ? auto_benchmark(net, w) : benchmark_from_str(benchmark);
            return json_to_py(classification_to_json(classify(net, bench, w)));
        },
        py::arg("net"), py::arg("limit"), py::arg("benchmark") = "");

    m.def("poly_orders",
          [](const Network& net) { return json_to_py(poly_orders_to_json(poly_orders(net))); });

    m.def(
        "rate_exponent",
        [](const Network& net, const std::string& limit) {
            return json_to_py(rate_estimate_to_json(rate_exponent(net, limit_from_str(limit))));
        },
        py::arg("net"), py::arg("limit"));

    m.def(
        "pigou_asymptotics",
        [](double d1, double d2, const std::string& limit) {
            return json_to_py(
                rate_estimate_to_json(pigou_asymptotics(d1, d2, limit_from_str(limit))));
        },
        py::arg("d1"), py::arg("d2"), py::arg("limit"));

    m.def(
        "rate_bound_constants",
        [](const Network& net, const std::vector<double>& rates, const std::string& limit) {
            return json_to_py(
                rate_bound_to_json(rate_bound_constants(net, rates, limit_from_str(limit))));
        },
        py::arg("net"), py::arg("rates"), py::arg("limit"));

    m.def(
        "limit_value",
        [](const Network& net, const std::vector<double>& rates, const std::string& limit,
           const std::string& benchmark) {
            const TrafficLimit w = limit_from_str(limit);
            const Benchmark bench =
                benchmark.empty() ? auto_benchmark(net, w) : benchmark_from_str(benchmark);
            return json_to_py(limit_value_to_json(limit_value(net, rates, bench, w)));
        },
        py::arg("net"), py::arg("rates"), py::arg("limit"), py::arg("benchmark") = "");

    m.def(
        "predict_poa_limit",
        [](const Network& net, const std::vector<double>& rates, const std::string& limit) {
            const PoaLimitVerdict v = predict_poa_limit(net, rates, limit_from_str(limit));
            py::dict d;
            d["converges_to_one"] = v.converges_to_one;
            d["reason"] = v.reason;
            if (v.benchmark) d["benchmark"] = v.benchmark->describe();
            return d;
        },
        py::arg("net"), py::arg("rates"), py::arg("limit"));

    m.def(
        "k_shortest_paths",
        [](const Network& net, int origin, int dest, int k) {
            const KspResult r = k_shortest_paths(net, origin, dest, k);
            return py::make_tuple(r.paths, r.exhausted);
        },
        py::arg("net"), py::arg("origin"), py::arg("dest"), py::arg("k"));

    m.def("lock_in_threshold", &lock_in_threshold, py::arg("net"));

    m.def(
        "salience_check",
        [](const std::vector<py::dict>& rules, const std::vector<int>& subset, long horizon,
           double threshold) {
            DemandSequence seq;
            for (const auto& rj : rules) {
                const std::string kind = rj["kind"].cast<std::string>();
                if (kind == "constant")
                    seq.rules.push_back(SequenceRule::constant(rj["value"].cast<double>()));
                else if (kind == "share")
                    seq.rules.push_back(SequenceRule::share_of_n(rj["share"].cast<double>()));
                else if (kind == "power")
                    seq.rules.push_back(SequenceRule::power_rule(rj["coeff"].cast<double>(),
                                                                 rj["power"].cast<double>()));
                else if (kind == "periodic")
                    seq.rules.push_back(SequenceRule::periodic(
                        rj.contains("odd0") ? rj["odd0"].cast<double>() : 0.0,
                        rj.contains("odd1") ? rj["odd1"].cast<double>() : 0.0,
                        rj.contains("even0") ? rj["even0"].cast<double>() : 0.0,
                        rj.contains("even1") ? rj["even1"].cast<double>() : 0.0));
                else
                    throw ParseError("sequence rule kind must be constant/share/power/periodic");
            }
            return json_to_py(salience_to_json(salience_check(seq, subset, horizon, threshold)));
        },
        py::arg("rules"), py::arg("subset"), py::arg("horizon"), py::arg("threshold") = 1e-6);

    m.def(
        "parse_tntp",
        [](const std::string& net_text, const std::string& trips_text, int k) {
            TntpScenario ts =
                build_tntp_scenario(parse_tntp_net(net_text), parse_tntp_trips(trips_text), k);
            return py::make_tuple(std::move(ts.net), ts.demand.inflows(), ts.od);
        },
        py::arg("net_text"), py::arg("trips_text"), py::arg("k") = 5);
}
