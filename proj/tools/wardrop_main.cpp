#include <clocale>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wardrop/json_io.hpp"
#include "wardrop/ksp.hpp"
#include "wardrop/poa.hpp"
#include "wardrop/scenario.hpp"
#include "wardrop/tntp.hpp"

namespace {

using namespace wardrop;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitHypothesis = 4;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw ParseError("cannot open output file: " + out_path);
        out << text;
    }
}

// Shared input options: exactly one of --scenario / --network / --tntp-net.
struct InputSpec {
    std::string scenario;
    ScenarioParams params;
    std::string network_json;
    std::string tntp_net, tntp_trips;
    int k = 5;
    std::vector<double> rates;  // optional override of the relative inflows

    void attach(CLI::App* cmd) {
        cmd->add_option("--scenario", scenario, "builtin scenario name");
        cmd->add_option("--d1", params.d1, "pigou_monomial first degree");
        cmd->add_option("--d2", params.d2, "pigou_monomial second degree");
        cmd->add_option("--d", params.d, "oscillating_three_link degree");
        cmd->add_option("--network", network_json, "network JSON file");
        cmd->add_option("--tntp-net", tntp_net, "TNTP network file");
        cmd->add_option("--tntp-trips", tntp_trips, "TNTP trips file (with --tntp-net)");
        cmd->add_option("--k", k, "paths per OD pair for TNTP input (default 5)");
        cmd->add_option("--rates", rates, "relative inflows per pair (overrides defaults)");
    }

    // Network plus default relative inflow rates.
    std::pair<Network, std::vector<double>> load() const {
        int sources = 0;
        if (!scenario.empty()) ++sources;
        if (!network_json.empty()) ++sources;
        if (!tntp_net.empty()) ++sources;
        if (sources != 1)
            throw ParseError("exactly one of --scenario, --network, --tntp-net is required");
        auto loaded = [&]() -> std::pair<Network, std::vector<double>> {
            if (!scenario.empty()) {
                Scenario sc = builtin_scenario(scenario, params);
                return {std::move(sc.net), sc.rates};
            }
            if (!network_json.empty()) {
                NetworkDocument nd = network_from_json(json::parse(slurp(network_json)));
                std::vector<double> r;
                if (nd.inflows) {
                    double t = 0.0;
                    for (double m : *nd.inflows) t += m;
                    if (t > 0.0) {
                        r = *nd.inflows;
                        for (double& m : r) m /= t;
                    }
                }
                if (r.empty()) r.assign(nd.net.num_pairs(), 1.0 / nd.net.num_pairs());
                return {std::move(nd.net), std::move(r)};
            }
            if (tntp_trips.empty()) throw ParseError("--tntp-net requires --tntp-trips");
            const TntpTrips trips = parse_tntp_trips(slurp(tntp_trips));
            if (trips.total_mismatch)
                std::cerr << "warning: trips total differs from <TOTAL OD FLOW>\n";
            TntpScenario ts = build_tntp_scenario(parse_tntp_net(slurp(tntp_net)), trips, k);
            return {std::move(ts.net), ts.demand.rates()};
        }();
        if (!rates.empty()) {
            if (int(rates.size()) != loaded.first.num_pairs())
                throw ParseError("--rates size does not match the number of OD pairs");
            double t = 0.0;
            for (double m : rates) t += m;
            if (t <= 0.0) throw ParseError("--rates must have a positive sum");
            loaded.second = rates;
            for (double& m : loaded.second) m /= t;
        }
        return loaded;
    }
};

TrafficLimit parse_limit(const std::string& s) {
    if (s == "light") return TrafficLimit::Light;
    if (s == "heavy") return TrafficLimit::Heavy;
    throw ParseError("--limit must be 'light' or 'heavy'");
}

std::optional<Benchmark> parse_benchmark(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "one" || s == "1") return Benchmark::constant_one();
    if (s.rfind("edge:", 0) == 0) return Benchmark::edge_cost(std::stoi(s.substr(5)));
    if (s.rfind("x^", 0) == 0) return Benchmark::monomial(std::stod(s.substr(2)));
    if (s == "x") return Benchmark::monomial(1.0);
    throw ParseError("--benchmark must be one of: x, x^Q, one, edge:K");
}

std::vector<double> scaled_inflows(const std::vector<double>& rates, double total) {
    std::vector<double> m(rates.size());
    for (size_t i = 0; i < rates.size(); ++i) m[i] = total * rates[i];
    return m;
}

DemandSequence parse_sequence(const std::string& spec, int pairs) {
    // Inline JSON or a file path: [{"kind":"power","coeff":1,"power":0.5}, ...]
    json j;
    if (!spec.empty() && (spec.front() == '[' || spec.front() == '{')) j = json::parse(spec);
    else j = json::parse(slurp(spec));
    if (!j.is_array() || int(j.size()) != pairs)
        throw ParseError("--sequence must be a JSON array with one rule per OD pair");
    DemandSequence seq;
    for (const auto& rj : j) {
        const std::string kind = rj.at("kind").get<std::string>();
        if (kind == "constant") seq.rules.push_back(SequenceRule::constant(rj.at("value").get<double>()));
        else if (kind == "share") seq.rules.push_back(SequenceRule::share_of_n(rj.at("share").get<double>()));
        else if (kind == "power")
            seq.rules.push_back(SequenceRule::power_rule(rj.at("coeff").get<double>(),
                                                         rj.at("power").get<double>()));
        else if (kind == "periodic")
            seq.rules.push_back(SequenceRule::periodic(
                rj.value("odd0", 0.0), rj.value("odd1", 0.0), rj.value("even0", 0.0),
                rj.value("even1", 0.0)));
        else throw ParseError("sequence rule kind must be constant/share/power/periodic");
    }
    return seq;
}

DemandSequence preset_sequence(const std::string& name) {
    DemandSequence seq;
    if (name == "efficient") {
        seq.rules.push_back(SequenceRule::power_rule(1.0, 0.5));  // sqrt(n)
        seq.rules.push_back(SequenceRule::power_rule(1.0, 1.0));  // n
    } else if (name == "inefficient") {
        seq.rules.push_back(SequenceRule::periodic(1.0, 0.0, 1.0, 2.0));  // 1 / 1+2n
        seq.rules.push_back(SequenceRule::periodic(0.0, 2.0, 0.0, 0.0));  // 2n / 0
    } else if (name == "alternating") {
        seq.rules.push_back(SequenceRule::periodic(0.0, 0.0, 1.0, 0.0));  // (1+(-1)^n)/2
        seq.rules.push_back(SequenceRule::periodic(1.0, 0.0, 0.0, 0.0));  // (1-(-1)^n)/2
    } else {
        throw ParseError("--sequence-preset must be efficient/inefficient/alternating");
    }
    return seq;
}

int run(int argc, char** argv) {
    CLI::App app{"Routing games: Wardrop equilibria, social optima, and the price of anarchy "
                 "across the congestion spectrum"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "solve for an equilibrium or optimum");
    InputSpec solve_in;
    solve_in.attach(solve_cmd);
    double solve_m = 1.0;
    std::string solve_obj = "we", solve_out;
    SolverConfig solve_cfg;
    solve_cmd->add_option("--inflow", solve_m, "total inflow M");
    solve_cmd->add_option("--objective", solve_obj, "we (equilibrium) or so (optimum)");
    solve_cmd->add_option("--tol", solve_cfg.rel_gap_tol, "relative duality gap tolerance");
    solve_cmd->add_option("--max-iters", solve_cfg.max_iterations, "iteration cap");
    solve_cmd->add_option("--out", solve_out, "output path (default stdout)");

    // poa
    auto* poa_cmd = app.add_subcommand("poa", "print the price of anarchy");
    InputSpec poa_in;
    poa_in.attach(poa_cmd);
    double poa_m = 1.0;
    SolverConfig poa_cfg;
    poa_cmd->add_option("--inflow", poa_m, "total inflow M");
    poa_cmd->add_option("--tol", poa_cfg.rel_gap_tol, "relative duality gap tolerance");
    poa_cmd->add_option("--max-iters", poa_cfg.max_iterations, "iteration cap");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "PoA over an inflow grid or demand sequence");
    InputSpec sweep_in;
    sweep_in.attach(sweep_cmd);
    GridSpec grid;
    SolverConfig sweep_cfg;
    std::string sweep_out, sweep_format = "csv", sweep_seq, sweep_preset;
    int sweep_horizon = 0, sweep_jobs = 1;
    std::vector<int> salience_subset;
    int salience_horizon = 0;
    sweep_cmd->add_option("--from", grid.from, "grid start (total inflow)");
    sweep_cmd->add_option("--to", grid.to, "grid end");
    sweep_cmd->add_option("--points", grid.points, "number of log-spaced grid points");
    sweep_cmd->add_option("--sequence", sweep_seq, "demand sequence rules (JSON or file)");
    sweep_cmd->add_option("--sequence-preset", sweep_preset,
                          "efficient | inefficient | alternating");
    sweep_cmd->add_option("--horizon", sweep_horizon, "sequence horizon N");
    sweep_cmd->add_option("--salience-subset", salience_subset,
                          "report salience of this pair subset (sequence mode)");
    sweep_cmd->add_option("--salience-horizon", salience_horizon,
                          "horizon for the salience report (default: --horizon)");
    sweep_cmd->add_option("--jobs", sweep_jobs, "parallel grid evaluation");
    sweep_cmd->add_option("--tol", sweep_cfg.rel_gap_tol, "relative duality gap tolerance");
    sweep_cmd->add_option("--max-iters", sweep_cfg.max_iterations, "iteration cap");
    sweep_cmd->add_option("--out", sweep_out, "output path (default stdout)");
    sweep_cmd->add_option("--format", sweep_format, "csv or json");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "fast/tight/slow classification");
    InputSpec classify_in;
    classify_in.attach(classify_cmd);
    std::string classify_limit = "heavy", classify_bench, classify_out;
    classify_cmd->add_option("--limit", classify_limit, "light or heavy");
    classify_cmd->add_option("--benchmark", classify_bench,
                             "x | x^Q | one | edge:K (default: auto)");
    classify_cmd->add_option("--out", classify_out, "output path (default stdout)");

    // rate
    auto* rate_cmd = app.add_subcommand("rate", "theorem rate exponent and bound constants");
    InputSpec rate_in;
    rate_in.attach(rate_cmd);
    std::string rate_limit = "heavy", rate_out;
    rate_cmd->add_option("--limit", rate_limit, "light or heavy");
    rate_cmd->add_option("--out", rate_out, "output path (default stdout)");

    // limit
    auto* limit_cmd = app.add_subcommand("limit", "limit problem value and allocation");
    InputSpec limit_in;
    limit_in.attach(limit_cmd);
    std::string limit_limit = "heavy", limit_bench, limit_out;
    limit_cmd->add_option("--limit", limit_limit, "light or heavy");
    limit_cmd->add_option("--benchmark", limit_bench, "x | x^Q | one | edge:K (default: auto)");
    limit_cmd->add_option("--out", limit_out, "output path (default stdout)");

    // scenario
    auto* scenario_cmd = app.add_subcommand("scenario", "list or dump builtin scenarios");
    std::string scenario_action = "list", scenario_name, scenario_out;
    ScenarioParams scenario_params;
    scenario_cmd->add_option("action", scenario_action, "list | dump");
    scenario_cmd->add_option("--scenario", scenario_name, "scenario to dump");
    scenario_cmd->add_option("--d1", scenario_params.d1, "pigou_monomial first degree");
    scenario_cmd->add_option("--d2", scenario_params.d2, "pigou_monomial second degree");
    scenario_cmd->add_option("--d", scenario_params.d, "oscillating degree");
    scenario_cmd->add_option("--out", scenario_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    if (solve_cmd->parsed()) {
        auto [net, rates] = solve_in.load();
        const Demand demand(scaled_inflows(rates, solve_m));
        const SolveResult r = solve_obj == "so" ? solve_optimum(net, demand, solve_cfg)
                              : solve_obj == "we"
                                  ? solve_wardrop(net, demand, solve_cfg)
                                  : throw ParseError("--objective must be we or so");
        emit(solve_result_to_json(r).dump(2), solve_out);
        return r.converged ? kExitOk : kExitNoConvergence;
    }
    if (poa_cmd->parsed()) {
        auto [net, rates] = poa_in.load();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9f", price_of_anarchy(net, scaled_inflows(rates, poa_m), poa_cfg));
        emit(buf, "");
        return kExitOk;
    }
    if (sweep_cmd->parsed()) {
        auto [net, rates] = sweep_in.load();
        SweepResult sw;
        std::optional<DemandSequence> seq;
        if (!sweep_preset.empty()) seq = preset_sequence(sweep_preset);
        else if (!sweep_seq.empty()) seq = parse_sequence(sweep_seq, net.num_pairs());
        if (seq) {
            if (sweep_horizon < 2) throw ParseError("sequence mode requires --horizon >= 2");
            sw = sequence_poa(net, *seq, sweep_horizon, sweep_cfg, sweep_jobs);
            if (!salience_subset.empty()) {
                const int N = salience_horizon > 0 ? salience_horizon : sweep_horizon;
                std::cerr << salience_to_json(salience_check(*seq, salience_subset, N)).dump(2)
                          << "\n";
            }
        } else {
            sw = sweep(net, rates, grid, sweep_cfg, sweep_jobs);
        }
        if (sweep_format == "csv") emit(sw.to_csv(), sweep_out);
        else if (sweep_format == "json") emit(sweep_to_json(sw).dump(2), sweep_out);
        else throw ParseError("--format must be csv or json");
        bool all_ok = true;
        for (const auto& row : sw.rows) all_ok = all_ok && row.converged && !row.failed;
        return all_ok ? kExitOk : kExitNoConvergence;
    }
    if (classify_cmd->parsed()) {
        auto [net, rates] = classify_in.load();
        const TrafficLimit w = parse_limit(classify_limit);
        const auto explicit_bench = parse_benchmark(classify_bench);
        const Benchmark bench = explicit_bench ? *explicit_bench : auto_benchmark(net, w);
        emit(classification_to_json(classify(net, bench, w)).dump(2), classify_out);
        return kExitOk;
    }
    if (rate_cmd->parsed()) {
        auto [net, rates] = rate_in.load();
        const TrafficLimit w = parse_limit(rate_limit);
        json out;
        out["orders"] = poly_orders_to_json(poly_orders(net));
        out["estimate"] = rate_estimate_to_json(rate_exponent(net, w));
        out["bound"] = rate_bound_to_json(rate_bound_constants(net, rates, w));
        emit(out.dump(2), rate_out);
        return kExitOk;
    }
    if (limit_cmd->parsed()) {
        auto [net, rates] = limit_in.load();
        const TrafficLimit w = parse_limit(limit_limit);
        const auto explicit_bench = parse_benchmark(limit_bench);
        const Benchmark bench = explicit_bench ? *explicit_bench : auto_benchmark(net, w);
        emit(limit_value_to_json(limit_value(net, rates, bench, w)).dump(2), limit_out);
        return kExitOk;
    }
    if (scenario_cmd->parsed()) {
        if (scenario_action == "list") {
            std::string out;
            for (const auto& n : builtin_scenario_names()) out += n + "\n";
            emit(out, scenario_out);
            return kExitOk;
        }
        if (scenario_action == "dump") {
            if (scenario_name.empty()) throw ParseError("scenario dump requires --scenario");
            const Scenario sc = builtin_scenario(scenario_name, scenario_params);
            emit(network_to_json(sc.net, sc.rates).dump(2), scenario_out);
            return kExitOk;
        }
        throw ParseError("scenario action must be list or dump");
    }
    return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    try {
        return run(argc, argv);
    } catch (const wardrop::HypothesisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const wardrop::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
