#include "wardrop/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace wardrop {

namespace {

constexpr double kObjectiveFloor = 1e-300;

struct PathCosts {
    std::vector<std::vector<double>> cost;  // per pair, per path
};

PathCosts path_costs(const Network& net, const std::vector<double>& edge_cost) {
    PathCosts pc;
    pc.cost.resize(net.num_pairs());
    for (int i = 0; i < net.num_pairs(); ++i) {
        const auto& paths = net.pair(i).paths;
        pc.cost[i].resize(paths.size());
        for (size_t p = 0; p < paths.size(); ++p) {
            double s = 0.0;
            for (int e : paths[p]) s += edge_cost[e];
            pc.cost[i][p] = s;
        }
    }
    return pc;
}

// Sampled check that x c(x) is nondecreasing-in-slope (marginal cost
// nondecreasing) for Generic edges; structured families are convex by
// construction with nonnegative coefficients.
bool sampled_convexity_ok(const Network& net, double scale) {
    for (const auto& ed : net.edges()) {
        if (ed.cost.kind() != CostKind::Generic) continue;
        double prev = -std::numeric_limits<double>::infinity();
        for (int j = 0; j <= 16; ++j) {
            const double x = scale * j / 16.0;
            const double m = ed.cost.marginal(x);
            if (m < prev - 1e-9 * std::max(1.0, std::abs(prev))) return false;
            prev = m;
        }
    }
    return true;
}

SolveResult frank_wolfe(const Network& net, const Demand& demand, SolveObjective objective,
                        const SolverConfig& cfg, const std::optional<FlowProfile>& initial) {
    if (demand.size() != net.num_pairs())
        throw StructuralError("solver: demand size does not match network pairs");
    if (demand.total() <= 0.0) throw NumericError("solver: zero total inflow rejected");

    const CostMetric metric =
        objective == SolveObjective::Beckmann ? CostMetric::Latency : CostMetric::Marginal;

    SolveResult res;
    res.flow = initial ? *initial : uniform_flow(net, demand);
    if (initial) check_feasible(net, demand, res.flow);
    if (objective == SolveObjective::Social)
        res.convexity_warning = !sampled_convexity_ok(net, demand.total());

    const int E = net.num_edges();
    std::vector<double> x = edge_loads(net, res.flow).loads;

    // Sparse direction over one pair's edges.
    struct Dir {
        std::vector<std::pair<int, double>> dx;  // (edge, delta)
        bool valid = false;
    };
    std::vector<double> scratch(E, 0.0);
    const auto make_dir = [&](int i, const std::vector<double>& target) {
        Dir d;
        const auto& paths = net.pair(i).paths;
        for (size_t p = 0; p < paths.size(); ++p) {
            const double delta = target[p] - res.flow.flows[i][p];
            if (delta == 0.0) continue;
            for (int e : paths[p]) scratch[e] += delta;
        }
        for (size_t p = 0; p < paths.size(); ++p)
            for (int e : paths[p])
                if (scratch[e] != 0.0) {
                    d.dx.emplace_back(e, scratch[e]);
                    scratch[e] = 0.0;
                }
        d.valid = !d.dx.empty();
        return d;
    };

    // Exact line search along a sparse direction: bisection on
    // h'(t) = sum_e cost_e(x_e + t d_e) d_e over t in [0, 1]; also returns a
    // Simpson estimate of the achieved decrease for candidate comparison.
    const auto line_search = [&](const Dir& d) {
        const auto hprime = [&](double t) {
            double s = 0.0;
            for (const auto& [e, de] : d.dx)
                s += edge_cost(net, e, std::max(0.0, x[e] + t * de), metric) * de;
            return s;
        };
        double t = 1.0;
        if (hprime(1.0) > 0.0) {
            double lo = 0.0, hi = 1.0;
            for (int j = 0; j < 100 && hi - lo > cfg.line_search_tol; ++j) {
                const double mid = 0.5 * (lo + hi);
                if (hprime(mid) > 0.0) hi = mid;
                else lo = mid;
            }
            t = 0.5 * (lo + hi);
        }
        const double decrease = t / 6.0 * (hprime(0.0) + 4.0 * hprime(0.5 * t) + hprime(t));
        return std::pair<double, double>(t, decrease);
    };

    std::vector<double> target(8), pcost(8);
    for (long sweep = 0; sweep < cfg.max_iterations; ++sweep) {
        // Stopping certificate: relative all-or-nothing duality gap.
        double gap = 0.0;
        for (int i = 0; i < net.num_pairs(); ++i) {
            const auto& paths = net.pair(i).paths;
            double best = std::numeric_limits<double>::infinity(), carried = 0.0;
            for (size_t p = 0; p < paths.size(); ++p) {
                double c = 0.0;
                for (int e : paths[p]) c += edge_cost(net, e, x[e], metric);
                best = std::min(best, c);
                carried += res.flow.flows[i][p] * c;
            }
            gap += carried - demand.inflow(i) * best;
        }
        gap = std::max(gap, 0.0);
        LoadProfile lp{x};
        const double L = social_cost(net, lp);
        res.objective = L;
        res.rel_gap = L > kObjectiveFloor ? gap / L : 0.0;
        res.iterations = sweep;
        if (res.rel_gap <= cfg.rel_gap_tol) {
            res.converged = true;
            res.loads = lp;
            return res;
        }

        // One block step per pair: the all-or-nothing direction onto the
        // cheapest path (ties toward the lowest index) and a pairwise
        // transfer from the costliest used path; the larger decrease wins.
        for (int i = 0; i < net.num_pairs(); ++i) {
            if (demand.inflow(i) <= 0.0) continue;
            const auto& paths = net.pair(i).paths;
            const size_t np = paths.size();
            pcost.assign(np, 0.0);
            for (size_t p = 0; p < np; ++p)
                for (int e : paths[p]) pcost[p] += edge_cost(net, e, x[e], metric);
            size_t b = 0;
            int w = -1;
            for (size_t p = 1; p < np; ++p)
                if (pcost[p] < pcost[b]) b = p;
            for (size_t p = 0; p < np; ++p)
                if (res.flow.flows[i][p] > 0.0 && (w < 0 || pcost[p] > pcost[size_t(w)]))
                    w = int(p);

            target.assign(np, 0.0);
            target[b] = demand.inflow(i);
            const Dir aon = make_dir(i, target);

            Dir pairwise;
            if (w >= 0 && size_t(w) != b) {
                target = res.flow.flows[i];
                target[b] += target[size_t(w)];
                target[size_t(w)] = 0.0;
                pairwise = make_dir(i, target);
            }

            double t = 0.0;
            bool picked_pairwise = false;
            double dec = 0.0;
            if (aon.valid) {
                const auto [ta, da] = line_search(aon);
                t = ta;
                dec = da;
            }
            if (pairwise.valid) {
                const auto [tp, dp] = line_search(pairwise);
                if (!aon.valid || dp < dec) {
                    t = tp;
                    picked_pairwise = true;
                }
            }
            if (!aon.valid && !pairwise.valid) continue;
            if (t == 0.0) continue;

            const Dir& chosen = picked_pairwise ? pairwise : aon;
            if (picked_pairwise) {
                const double moved = t * res.flow.flows[i][size_t(w)];
                res.flow.flows[i][size_t(w)] -= moved;
                res.flow.flows[i][b] += moved;
            } else {
                for (size_t p = 0; p < np; ++p) {
                    const double tgt = p == b ? demand.inflow(i) : 0.0;
                    res.flow.flows[i][p] += t * (tgt - res.flow.flows[i][p]);
                }
            }
            for (const auto& [e, de] : chosen.dx) x[e] = std::max(0.0, x[e] + t * de);
        }

        if ((sweep & 0x3f) == 0x3f) x = edge_loads(net, res.flow).loads;  // shed fp drift
    }

    res.iterations = cfg.max_iterations;
    res.converged = false;  // partial result, flagged
    res.loads = LoadProfile{x};
    res.objective = social_cost(net, res.loads);
    return res;
}

double objective_value(const Network& net, SolveObjective objective, const LoadProfile& x) {
    return objective == SolveObjective::Beckmann ? beckmann_potential(net, x)
                                                 : social_cost(net, x);
}

// Enumerates compositions of `left` into k - at parts.
template <typename Fn>
void for_each_composition(int k, std::vector<int>& buf, int at, int left, Fn&& fn) {
    if (at == k - 1) {
        buf[at] = left;
        fn(buf);
        return;
    }
    for (int v = 0; v <= left; ++v) {
        buf[at] = v;
        for_each_composition(k, buf, at + 1, left - v, fn);
    }
}

double compositions_count(int resolution, int k) {
    double c = 1.0;
    for (int j = 1; j < k; ++j) c = c * (resolution + j) / j;
    return c;
}

}  // namespace

SolveResult solve_wardrop(const Network& net, const Demand& demand, const SolverConfig& cfg,
                          const std::optional<FlowProfile>& initial) {
    return frank_wolfe(net, demand, SolveObjective::Beckmann, cfg, initial);
}

SolveResult solve_optimum(const Network& net, const Demand& demand, const SolverConfig& cfg,
                          const std::optional<FlowProfile>& initial) {
    return frank_wolfe(net, demand, SolveObjective::Social, cfg, initial);
}

SolveResult brute_force_solve(const Network& net, const Demand& demand, SolveObjective objective,
                              int resolution) {
    if (net.num_paths() > 6)
        throw StructuralError("brute_force_solve: instance too large (more than 6 paths)");
    if (resolution < 100) throw StructuralError("brute_force_solve: resolution must be >= 100");
    if (demand.size() != net.num_pairs())
        throw StructuralError("brute_force_solve: demand size mismatch");

    SolveResult res;

    // Keep the full product enumeration below ~3e7 evaluations.
    double total = 1.0;
    int R = resolution;
    for (;;) {
        total = 1.0;
        for (int i = 0; i < net.num_pairs(); ++i)
            total *= compositions_count(R, int(net.pair(i).paths.size()));
        if (total <= 3e7 || R <= 100) break;
        R = std::max(100, R / 2);
        res.resolution_reduced = true;
    }

    const int P = net.num_pairs();
    std::vector<std::vector<std::vector<double>>> options(P);  // per pair: candidate flow vectors
    for (int i = 0; i < P; ++i) {
        const int k = int(net.pair(i).paths.size());
        const double m = demand.inflow(i);
        std::vector<int> buf(k);
        for_each_composition(k, buf, 0, R, [&](const std::vector<int>& c) {
            std::vector<double> f(k);
            for (int p = 0; p < k; ++p) f[p] = m * c[p] / R;
            options[i].push_back(std::move(f));
        });
    }

    FlowProfile cur, bestf;
    cur.flows.resize(P);
    double bestv = std::numeric_limits<double>::infinity();
    long evals = 0;
    const std::function<void(int)> rec = [&](int i) {
        if (i == P) {
            const LoadProfile x = edge_loads(net, cur);
            const double v = objective_value(net, objective, x);
            ++evals;
            if (v < bestv) {
                bestv = v;
                bestf = cur;
            }
            return;
        }
        for (const auto& f : options[i]) {
            cur.flows[i] = f;
            rec(i + 1);
        }
    };
    rec(0);

    // One refinement pass at 10x resolution in a +-1 coarse-step box around
    // the incumbent.
    const int fine = 10;
    std::vector<std::vector<std::vector<double>>> fine_options(P);
    for (int i = 0; i < P; ++i) {
        const int k = int(net.pair(i).paths.size());
        const double m = demand.inflow(i);
        const double step = m / (double(R) * fine);
        std::vector<int> base(k);
        for (int p = 0; p < k; ++p)
            base[p] = int(std::lround(bestf.flows[i][p] / std::max(step, 1e-300)));
        const int total_units = R * fine;
        // Enumerate unit vectors within the box, summing to total_units.
        std::vector<int> buf(k);
        const std::function<void(int, int)> gen = [&](int at, int left) {
            const int lo = std::max(0, base[at] - fine), hi = base[at] + fine;
            if (at == k - 1) {
                if (left >= lo && left <= hi) {
                    buf[at] = left;
                    std::vector<double> f(k);
                    for (int p = 0; p < k; ++p) f[p] = m * buf[p] / total_units;
                    fine_options[i].push_back(std::move(f));
                }
                return;
            }
            for (int v = lo; v <= std::min(hi, left); ++v) {
                buf[at] = v;
                gen(at + 1, left - v);
            }
        };
        if (m > 0.0) gen(0, total_units);
        if (fine_options[i].empty()) fine_options[i].push_back(bestf.flows[i]);
    }
    const std::function<void(int)> rec2 = [&](int i) {
        if (i == P) {
            const LoadProfile x = edge_loads(net, cur);
            const double v = objective_value(net, objective, x);
            ++evals;
            if (v < bestv) {
                bestv = v;
                bestf = cur;
            }
            return;
        }
        for (const auto& f : fine_options[i]) {
            cur.flows[i] = f;
            rec2(i + 1);
        }
    };
    rec2(0);

    res.flow = bestf;
    res.loads = edge_loads(net, bestf);
    res.objective = social_cost(net, res.loads);
    res.rel_gap = 0.0;
    res.iterations = evals;
    res.converged = true;
    return res;
}

}  // namespace wardrop
