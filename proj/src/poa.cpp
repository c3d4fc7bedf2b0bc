#include "wardrop/poa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

namespace wardrop {

namespace {

constexpr double kOptFloor = 1e-300;

SweepRow evaluate_point(const Network& net, const std::vector<double>& inflows, double scale_value,
                        const SolverConfig& cfg) {
    SweepRow row;
    row.scale = scale_value;
    double total = 0.0;
    for (double m : inflows) total += m;
    if (total <= 0.0) {
        row.poa = 1.0;  // vacuous convention
        return row;
    }
    try {
        const Demand demand(inflows);
        const SolveResult eq = solve_wardrop(net, demand, cfg);
        const SolveResult opt = solve_optimum(net, demand, cfg);
        row.eq = eq.objective;
        row.opt = opt.objective;
        row.eq_gap = eq.rel_gap;
        row.opt_gap = opt.rel_gap;
        row.converged = eq.converged && opt.converged;
        row.poa = row.opt <= kOptFloor ? 1.0 : row.eq / row.opt;
    } catch (const std::exception&) {
        row.failed = true;
        row.poa = std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

void run_rows(int jobs, int count, const std::function<void(int)>& work) {
    jobs = std::max(1, jobs);
    if (jobs == 1 || count <= 1) {
        for (int k = 0; k < count; ++k) work(k);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min(jobs, count);
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t)
        pool.emplace_back([&] {
            for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) work(k);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

double price_of_anarchy(const Network& net, const std::vector<double>& inflows,
                        const SolverConfig& cfg) {
    double total = 0.0;
    for (double m : inflows) total += m;
    if (total <= 0.0) return 1.0;
    const Demand demand(inflows);
    const double eq = solve_wardrop(net, demand, cfg).objective;
    const double opt = solve_optimum(net, demand, cfg).objective;
    if (opt <= kOptFloor) return 1.0;
    return eq / opt;
}

std::vector<double> GridSpec::values() const {
    if (points < 2) throw StructuralError("grid: need at least 2 points");
    if (!(from > 0.0) || !(to > from)) throw StructuralError("grid: need 0 < from < to");
    std::vector<double> v(points);
    const double lf = std::log(from), lt = std::log(to);
    for (int k = 0; k < points; ++k)
        v[k] = std::exp(lf + (lt - lf) * double(k) / double(points - 1));
    return v;
}

std::string SweepResult::to_csv() const {
    std::string out = "M,eq_cost,opt_cost,poa,eq_gap,opt_gap\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.scale, r.eq,
                      r.opt, r.poa, r.eq_gap, r.opt_gap);
        out += buf;
    }
    return out;
}

SweepResult sweep(const Network& net, const std::vector<double>& rates, const GridSpec& grid,
                  const SolverConfig& cfg, int jobs) {
    if (int(rates.size()) != net.num_pairs())
        throw StructuralError("sweep: rates size does not match network pairs");
    double rsum = 0.0;
    for (double r : rates) rsum += r;
    if (rsum <= 0.0) throw StructuralError("sweep: relative inflows sum to zero");

    const std::vector<double> ms = grid.values();
    SweepResult res;
    res.config = cfg;
    res.rows.resize(ms.size());
    run_rows(jobs, int(ms.size()), [&](int k) {
        std::vector<double> inflows(rates.size());
        for (size_t i = 0; i < rates.size(); ++i) inflows[i] = ms[k] * rates[i] / rsum;
        res.rows[k] = evaluate_point(net, inflows, ms[k], cfg);
    });
    return res;
}

SequenceRule SequenceRule::constant(double v) {
    SequenceRule r;
    r.kind = Kind::Constant;
    r.value = v;
    return r;
}
SequenceRule SequenceRule::share_of_n(double s) {
    SequenceRule r;
    r.kind = Kind::Share;
    r.share = s;
    return r;
}
SequenceRule SequenceRule::power_rule(double c, double p) {
    SequenceRule r;
    r.kind = Kind::Power;
    r.coeff = c;
    r.power = p;
    return r;
}
SequenceRule SequenceRule::periodic(double odd0, double odd1, double even0, double even1) {
    SequenceRule r;
    r.kind = Kind::Periodic;
    r.odd0 = odd0;
    r.odd1 = odd1;
    r.even0 = even0;
    r.even1 = even1;
    return r;
}
SequenceRule SequenceRule::custom_rule(std::function<double(double)> fn) {
    SequenceRule r;
    r.kind = Kind::Custom;
    r.custom = std::move(fn);
    return r;
}

double SequenceRule::operator()(double n) const {
    double m = 0.0;
    switch (kind) {
        case Kind::Constant: m = value; break;
        case Kind::Share: m = share * n; break;
        case Kind::Power: m = coeff * std::pow(n, power); break;
        case Kind::Periodic: {
            const bool odd = std::fmod(n, 2.0) != 0.0;
            m = odd ? odd0 + odd1 * n : even0 + even1 * n;
            break;
        }
        case Kind::Custom: m = custom(n); break;
    }
    if (m < 0.0 || !std::isfinite(m))
        throw StructuralError("sequence: inflow rule produced a negative or non-finite value");
    return m;
}

std::vector<double> DemandSequence::inflows(double n) const {
    std::vector<double> v(rules.size());
    for (size_t i = 0; i < rules.size(); ++i) v[i] = rules[i](n);
    return v;
}

double DemandSequence::total(double n) const {
    double t = 0.0;
    for (const auto& r : rules) t += r(n);
    return t;
}

std::vector<double> DemandSequence::rates(double n) const {
    std::vector<double> v = inflows(n);
    double t = 0.0;
    for (double m : v) t += m;
    if (t <= 0.0) throw StructuralError("sequence: total inflow is zero at n = " +
                                        std::to_string(n));
    for (double& m : v) m /= t;
    return v;
}

SalienceReport salience_check(const DemandSequence& seq, const std::vector<int>& subset,
                              long horizon, double threshold) {
    if (horizon < 10) throw StructuralError("salience_check: horizon must be >= 10");
    SalienceReport rep;
    rep.subset = subset;
    rep.horizon = horizon;
    rep.threshold = threshold;
    rep.tail_min = std::numeric_limits<double>::infinity();

    const auto probe = [&](long n) {
        const std::vector<double> lam = seq.rates(double(n));
        double s = 0.0;
        for (int i : subset) s += lam.at(i);
        rep.tail_min = std::min(rep.tail_min, s);
    };

    const long lo = horizon / 2;
    if (horizon - lo <= 100000) {
        for (long n = lo; n <= horizon; ++n) probe(n);
    } else {
        // Long tails are sampled: blocks of consecutive indices (to cover
        // periodic phases) at geometrically spaced anchors.
        const int anchors = 1024, block = 64;
        for (int a = 0; a <= anchors; ++a) {
            const long base =
                lo + long(double(horizon - lo) * (std::pow(2.0, double(a) / anchors) - 1.0));
            for (long n = base; n < std::min(base + block, horizon + 1); ++n) probe(n);
        }
        probe(horizon);
    }
    rep.salient = rep.tail_min > threshold;
    return rep;
}

SweepResult sequence_poa(const Network& net, const DemandSequence& seq, int horizon,
                         const SolverConfig& cfg, int jobs) {
    if (horizon < 2) throw StructuralError("sequence_poa: horizon must be >= 2");
    if (int(seq.rules.size()) != net.num_pairs())
        throw StructuralError("sequence_poa: sequence size does not match network pairs");
    SweepResult res;
    res.config = cfg;
    res.scale_label = "n";
    res.rows.resize(horizon);
    run_rows(jobs, horizon, [&](int k) {
        const int n = k + 1;
        res.rows[k] = evaluate_point(net, seq.inflows(n), double(n), cfg);
    });
    return res;
}

RateEstimate fit_power_law(const SweepResult& result, TrafficLimit limit, double tail_decades,
                           double noise_mult) {
    const bool heavy = limit == TrafficLimit::Heavy;
    std::vector<std::pair<double, double>> usable;  // (M, poa - 1)
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    int tail_total = 0;
    bool any_above_floor = false;
    for (const auto& r : result.rows) {
        if (r.failed || !(r.scale > 0.0)) continue;
        lo = std::min(lo, r.scale);
        hi = std::max(hi, r.scale);
    }
    if (!(hi > 0.0)) throw HypothesisError("fit_power_law: no usable rows");
    const double cut = heavy ? hi / std::pow(10.0, tail_decades)
                             : lo * std::pow(10.0, tail_decades);
    for (const auto& r : result.rows) {
        if (r.failed || !(r.scale > 0.0)) continue;
        const bool in_tail = heavy ? r.scale >= cut : r.scale <= cut;
        if (!in_tail) continue;
        ++tail_total;
        const double excess = r.poa - 1.0;
        const double floor = noise_mult * (r.eq_gap + r.opt_gap);
        if (excess <= floor) continue;
        any_above_floor = true;
        usable.emplace_back(r.scale, excess);
    }
    RateEstimate re;
    re.provenance = RateEstimate::Provenance::EmpiricalFit;
    if (!any_above_floor && tail_total >= 1) {
        // Degenerate: every tail row is at the noise floor, consistent with
        // PoA identically 1.
        re.exponent = 0.0;
        re.constant = std::nullopt;
        return re;
    }
    if (int(usable.size()) < 5)
        throw HypothesisError("fit_power_law: fewer than 5 usable tail rows");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [m, ex] : usable) {
        const double X = std::log(m), Y = std::log(ex);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
    }
    const double n = double(usable.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    re.exponent = heavy ? -slope : slope;

    double logb = 0.0;
    for (const auto& [m, ex] : usable)
        logb += std::log(ex) + (heavy ? re.exponent : -re.exponent) * std::log(m);
    re.constant = std::exp(logb / n);
    return re;
}

namespace {

// Cost of path p when all of its edges carry load M (the lock-in lemma's
// comparison quantity).
double path_cost_at_uniform_load(const Network& net, const Path& p, double M, CostMetric metric) {
    double s = 0.0;
    for (int e : p) s += edge_cost(net, e, M, metric);
    return s;
}

double lock_in_threshold_metric(const Network& net, CostMetric metric) {
    double threshold = std::numeric_limits<double>::infinity();
    for (int i = 0; i < net.num_pairs(); ++i) {
        const auto& paths = net.pair(i).paths;
        std::vector<double> zero_cost(paths.size());
        double zmin = std::numeric_limits<double>::infinity();
        for (size_t p = 0; p < paths.size(); ++p) {
            zero_cost[p] = path_cost_at_uniform_load(net, paths[p], 0.0, metric);
            zmin = std::min(zmin, zero_cost[p]);
        }
        double next_best = std::numeric_limits<double>::infinity();
        for (size_t p = 0; p < paths.size(); ++p)
            if (zero_cost[p] > zmin) next_best = std::min(next_best, zero_cost[p]);
        if (!std::isfinite(next_best)) continue;  // all paths minimal: no constraint

        const auto min_cost_at = [&](double M) {
            double best = std::numeric_limits<double>::infinity();
            for (size_t p = 0; p < paths.size(); ++p)
                if (zero_cost[p] == zmin)
                    best = std::min(best, path_cost_at_uniform_load(net, paths[p], M, metric));
            return best;
        };
        // Largest M with min-cost-at-M < next_best; costs are nondecreasing.
        double hi = 1.0;
        int guard = 0;
        while (min_cost_at(hi) < next_best && hi < 1e12 && guard++ < 64) hi *= 2.0;
        if (min_cost_at(hi) < next_best) continue;  // unconstrained up to 1e12
        double lo = 0.0;
        for (int j = 0; j < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++j) {
            const double mid = 0.5 * (lo + hi);
            if (min_cost_at(mid) < next_best) lo = mid;
            else hi = mid;
        }
        threshold = std::min(threshold, lo);
    }
    return threshold;
}

}  // namespace

double lock_in_threshold(const Network& net) {
    return std::min(lock_in_threshold_metric(net, CostMetric::Latency),
                    lock_in_threshold_metric(net, CostMetric::Marginal));
}

}  // namespace wardrop
