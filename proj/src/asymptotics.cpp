#include "wardrop/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wardrop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string edge_tag(int e) { return "edge " + std::to_string(e); }

}  // namespace

CostFunction Benchmark::as_cost(const Network& net) const {
    switch (kind) {
        case Kind::Monomial: {
            const double g = degree;
            if (g == std::floor(g))
                return CostFunction::monomial(int(g), 1.0);
            return CostFunction::generic(
                "x^" + std::to_string(g), [g](double x) { return std::pow(x, g); },
                ExtReal::finite(g), ExtReal::finite(g));
        }
        case Kind::ConstantOne:
            return CostFunction::constant(1.0);
        case Kind::EdgeCost:
            return net.edge(edge).cost;
    }
    throw StructuralError("benchmark: unknown kind");
}

double Benchmark::rv_degree(const Network& net, TrafficLimit w) const {
    switch (kind) {
        case Kind::Monomial:
            return degree;
        case Kind::ConstantOne:
            return 0.0;
        case Kind::EdgeCost: {
            const ExtReal b = net.edge(edge).cost.rv_degree(w);
            if (!b.is_finite())
                throw HypothesisError("benchmark: " + edge_tag(edge) +
                                      " cost is not regularly varying at " +
                                      limit_name(w) + " (declare a degree hint)");
            return b.value();
        }
    }
    throw StructuralError("benchmark: unknown kind");
}

std::string Benchmark::describe() const {
    switch (kind) {
        case Kind::Monomial:
            return degree == 0.0 ? "x^0" : "x^" + std::to_string(degree);
        case Kind::ConstantOne:
            return "1";
        case Kind::EdgeCost:
            return "edge:" + std::to_string(edge);
    }
    return "?";
}

namespace {

// Leading behavior of a cost at a limit: degree of the dominant power, its
// coefficient when the cost is asymptotically equivalent to that power
// ("exact"), or a bounded oscillating factor / declared hint otherwise.
struct Leading {
    enum class Kind { Zero, Exact, BoundedOsc, Hinted, Unknown };
    Kind kind = Kind::Unknown;
    ExtReal degree = ExtReal::undef();
    double coeff = 0.0;
};

Leading leading_behavior(const CostFunction& c, TrafficLimit w) {
    if (c.is_zero()) return {Leading::Kind::Zero, ExtReal::finite(0.0), 0.0};
    if (c.poly_like()) {
        const double deg = w == TrafficLimit::Light ? c.min_degree() : c.max_degree();
        return {Leading::Kind::Exact, ExtReal::finite(deg), c.coeff_at(deg)};
    }
    if (c.kind() == CostKind::Oscillating)
        return {Leading::Kind::BoundedOsc, ExtReal::finite(double(c.osc_degree())), 0.0};
    const ExtReal hint = c.rv_degree(w);
    if (!hint.is_undef()) return {Leading::Kind::Hinted, hint, 0.0};
    return {Leading::Kind::Unknown, ExtReal::undef(), 0.0};
}

// Degree comparison verdict: does deg(a) vs deg(b) alone decide the ratio
// limit at w? Strictly larger degree dominates at heavy and vanishes
// (relatively) at light.
std::optional<ExtReal> decide_by_degree(const ExtReal& da, const ExtReal& db, TrafficLimit w) {
    if (da.is_undef() || db.is_undef()) return std::nullopt;
    int cmp;
    if (da.is_inf() && db.is_inf()) return std::nullopt;
    else if (da.is_inf()) cmp = 1;
    else if (db.is_inf()) cmp = -1;
    else if (da.value() > db.value()) cmp = 1;
    else if (da.value() < db.value()) cmp = -1;
    else return std::nullopt;  // equal degrees: degree alone cannot decide
    const bool a_dominates = (w == TrafficLimit::Heavy) ? cmp > 0 : cmp < 0;
    return a_dominates ? ExtReal::inf() : ExtReal::finite(0.0);
}

ExtReal numeric_ratio_limit(const CostFunction& a, const CostFunction& b, TrafficLimit w,
                            const LimitDetectConfig& cfg) {
    std::vector<double> samples;
    samples.reserve(cfg.points);
    double x = w == TrafficLimit::Heavy ? cfg.start : 1.0 / cfg.start;
    const double step = w == TrafficLimit::Heavy ? cfg.factor : 1.0 / cfg.factor;
    for (int j = 0; j < cfg.points; ++j, x *= step) {
        const double va = a(x), vb = b(x);
        if (std::isnan(va) || std::isnan(vb)) continue;
        if (vb == 0.0) {
            if (va == 0.0) continue;
            samples.push_back(kInf);
            continue;
        }
        if (std::isinf(va) && std::isinf(vb)) continue;  // indeterminate sample
        samples.push_back(va / vb);
    }
    if (int(samples.size()) < cfg.window) return ExtReal::undef();
    const auto tail = std::vector<double>(samples.end() - cfg.window, samples.end());
    const bool all_small = std::all_of(tail.begin(), tail.end(),
                                       [&](double r) { return r <= 1.0 / cfg.cap; });
    if (all_small) return ExtReal::finite(0.0);
    const bool all_big =
        std::all_of(tail.begin(), tail.end(), [&](double r) { return r >= cfg.cap; });
    if (all_big) return ExtReal::inf();
    const double rmax = *std::max_element(tail.begin(), tail.end());
    const double rmin = *std::min_element(tail.begin(), tail.end());
    if (std::isfinite(rmax) && rmax > 0.0 && (rmax - rmin) <= cfg.spread_tol * rmax)
        return ExtReal::finite(tail.back());
    return ExtReal::undef();
}

}  // namespace

ExtReal ratio_limit(const CostFunction& a, const CostFunction& b, TrafficLimit w,
                    const LimitDetectConfig& cfg) {
    const Leading la = leading_behavior(a, w), lb = leading_behavior(b, w);
    if (la.kind == Leading::Kind::Zero && lb.kind == Leading::Kind::Zero)
        return ExtReal::finite(1.0);
    if (la.kind == Leading::Kind::Zero) return ExtReal::finite(0.0);
    if (lb.kind == Leading::Kind::Zero) return ExtReal::inf();

    if (la.kind == Leading::Kind::Exact && lb.kind == Leading::Kind::Exact) {
        if (const auto v = decide_by_degree(la.degree, lb.degree, w)) return *v;
        return ExtReal::finite(la.coeff / lb.coeff);
    }
    if (const auto v = decide_by_degree(la.degree, lb.degree, w)) return *v;

    // Equal (or unknown) degrees with at least one inexact side. A bounded
    // oscillating factor at the same degree never settles: ratio of equal
    // sine/cosine phases is 1, anything else oscillates.
    if (la.kind == Leading::Kind::BoundedOsc || lb.kind == Leading::Kind::BoundedOsc) {
        if (la.kind == Leading::Kind::BoundedOsc && lb.kind == Leading::Kind::BoundedOsc &&
            a.phase() == b.phase() && a.osc_degree() == b.osc_degree())
            return ExtReal::finite(1.0);
        if ((la.kind == Leading::Kind::BoundedOsc && lb.kind == Leading::Kind::Exact) ||
            (la.kind == Leading::Kind::Exact && lb.kind == Leading::Kind::BoundedOsc) ||
            (la.kind == Leading::Kind::BoundedOsc && lb.kind == Leading::Kind::BoundedOsc))
            return ExtReal::undef();
    }
    return numeric_ratio_limit(a, b, w, cfg);
}

ExtReal edge_index(const Network& net, int e, const Benchmark& bench, TrafficLimit w,
                   const LimitDetectConfig& cfg) {
    return ratio_limit(net.edge(e).cost, bench.as_cost(net), w, cfg);
}

namespace {

EdgeClass label_of(const ExtReal& v) {
    if (v.is_inf()) return EdgeClass::Slow;
    if (v.is_zero()) return EdgeClass::Fast;
    return EdgeClass::Tight;
}

}  // namespace

ClassificationReport classify(const Network& net, const Benchmark& bench, TrafficLimit w,
                              const LimitDetectConfig& cfg) {
    ClassificationReport rep;
    rep.limit = w;
    rep.benchmark = bench;
    rep.edge_indices.resize(net.num_edges());
    rep.edge_classes.resize(net.num_edges());
    for (int e = 0; e < net.num_edges(); ++e) {
        const ExtReal v = edge_index(net, e, bench, w, cfg);
        if (v.is_undef())
            throw HypothesisError("classify: index of " + edge_tag(e) +
                                  " relative to benchmark " + bench.describe() + " at " +
                                  limit_name(w) + " does not exist (not regularly comparable)");
        rep.edge_indices[e] = v;
        rep.edge_classes[e] = label_of(v);
    }
    rep.path_indices.resize(net.num_pairs());
    rep.path_classes.resize(net.num_pairs());
    rep.pair_indices.resize(net.num_pairs());
    rep.pair_classes.resize(net.num_pairs());
    for (int i = 0; i < net.num_pairs(); ++i) {
        const auto& paths = net.pair(i).paths;
        ExtReal pair_idx = ExtReal::inf();
        for (const auto& p : paths) {
            ExtReal path_idx = ExtReal::finite(0.0);
            for (int e : p) path_idx = max(path_idx, rep.edge_indices[e]);
            rep.path_indices[i].push_back(path_idx);
            rep.path_classes[i].push_back(label_of(path_idx));
            pair_idx = min(pair_idx, path_idx);
        }
        rep.pair_indices[i] = pair_idx;
        rep.pair_classes[i] = label_of(pair_idx);
    }
    ExtReal net_idx = ExtReal::finite(0.0);
    for (int i = 0; i < net.num_pairs(); ++i) net_idx = max(net_idx, rep.pair_indices[i]);
    rep.network_index = net_idx;
    rep.tight = net_idx.is_finite() && !net_idx.is_zero();
    return rep;
}

Benchmark auto_benchmark(const Network& net, TrafficLimit w, const LimitDetectConfig& cfg) {
    const int E = net.num_edges();
    std::vector<std::vector<ExtReal>> ratio(E, std::vector<ExtReal>(E));
    for (int e = 0; e < E; ++e)
        for (int f = 0; f < E; ++f) {
            ratio[e][f] = e == f ? ExtReal::finite(1.0)
                                 : ratio_limit(net.edge(e).cost, net.edge(f).cost, w, cfg);
            if (ratio[e][f].is_undef())
                throw HypothesisError("auto_benchmark: ratio of " + edge_tag(e) + " to " +
                                      edge_tag(f) + " has no limit at " + limit_name(w));
        }
    // e <= f iff lim c_e/c_f <= 1. Numeric ratio estimates carry up to
    // spread_tol of sampling error, so values that close to 1 count as ties.
    const auto leq = [&](int e, int f) {
        const ExtReal& r = ratio[e][f];
        return r.is_finite() && r.value() <= 1.0 + cfg.spread_tol;
    };

    // Maximal edge of each path; per pair the path whose maximal edge is
    // minimal; across pairs the maximal of those. Ties keep the first
    // (lowest index) candidate.
    std::vector<int> pair_edge(net.num_pairs());
    for (int i = 0; i < net.num_pairs(); ++i) {
        int best_edge = -1;
        for (const auto& p : net.pair(i).paths) {
            int m = p[0];
            for (int e : p)
                if (!leq(e, m)) m = e;
            if (best_edge == -1 || (leq(m, best_edge) && !leq(best_edge, m))) best_edge = m;
        }
        pair_edge[i] = best_edge;
    }
    int hat = pair_edge[0];
    for (int i = 1; i < net.num_pairs(); ++i)
        if (leq(hat, pair_edge[i]) && !leq(pair_edge[i], hat)) hat = pair_edge[i];

    if (net.edge(hat).cost.is_zero())
        throw HypothesisError("auto_benchmark: selected benchmark cost is identically zero");
    return Benchmark::edge_cost(hat);
}

PolyOrders poly_orders(const Network& net) {
    PolyOrders po;
    for (const auto& ed : net.edges()) {
        if (!ed.cost.poly_like())
            throw StructuralError("poly_orders: all costs must have a sparse-power form");
        po.edge_q.push_back(ed.cost.min_degree());
        po.edge_d.push_back(ed.cost.max_degree());
    }
    po.path_q.resize(net.num_pairs());
    po.path_d.resize(net.num_pairs());
    po.net_q = kInf;
    po.net_d = -kInf;
    for (int i = 0; i < net.num_pairs(); ++i) {
        double pq = -kInf, pd = kInf;
        for (const auto& p : net.pair(i).paths) {
            double q = kInf, d = -kInf;
            for (int e : p) {
                q = std::min(q, po.edge_q[e]);
                d = std::max(d, po.edge_d[e]);
            }
            po.path_q[i].push_back(q);
            po.path_d[i].push_back(d);
            pq = std::max(pq, q);  // light: pair order is the max over paths
            pd = std::min(pd, d);  // heavy: min over paths
        }
        po.pair_q.push_back(pq);
        po.pair_d.push_back(pd);
        po.net_q = std::min(po.net_q, pq);
        po.net_d = std::max(po.net_d, pd);
    }
    po.gap_light = -kInf;
    po.gap_heavy = kInf;
    for (int e = 0; e < net.num_edges(); ++e) {
        if (po.edge_q[e] < po.net_q) {
            po.slow_light.push_back(e);
            po.gap_light = std::max(po.gap_light, po.edge_q[e]);
        }
        if (po.edge_d[e] > po.net_d) {
            po.slow_heavy.push_back(e);
            po.gap_heavy = std::min(po.gap_heavy, po.edge_d[e]);
        }
    }
    for (int i = 0; i < net.num_pairs(); ++i) {
        if (po.pair_q[i] == po.net_q) po.tight_pairs_light.push_back(i);
        if (po.pair_d[i] == po.net_d) po.tight_pairs_heavy.push_back(i);
    }
    return po;
}

RateEstimate rate_exponent(const Network& net, TrafficLimit w) {
    const PolyOrders po = poly_orders(net);
    RateEstimate re;
    re.provenance = RateEstimate::Provenance::TheoremExponent;
    if (w == TrafficLimit::Light) {
        if (po.slow_light.empty()) {
            re.exponent = 1.0;
            re.slow_set_empty = true;  // K_a = 0, linear term governs
        } else {
            re.exponent = po.gap_light > 0.0 ? po.net_q / po.gap_light - 1.0 : kInf;
        }
    } else {
        if (po.slow_heavy.empty()) {
            re.exponent = 1.0;
            re.slow_set_empty = true;
        } else {
            re.exponent = 1.0 - po.net_d / po.gap_heavy;
        }
    }
    return re;
}

RateEstimate pigou_asymptotics(double d1, double d2, TrafficLimit w) {
    if (!(d1 > 0.0) || d2 < d1)
        throw StructuralError("pigou_asymptotics: need 0 < d1 <= d2");
    RateEstimate re;
    re.provenance = RateEstimate::Provenance::PigouClosedForm;
    if (w == TrafficLimit::Light) {
        re.exponent = d2 / d1 - 1.0;
        re.constant = d1 * std::pow((1.0 + d2) / (1.0 + d1), 1.0 + 1.0 / d1) - d2;
    } else {
        re.exponent = 1.0 - d1 / d2;
        re.constant = d2 * std::pow((1.0 + d1) / (1.0 + d2), 1.0 + 1.0 / d2) - d1;
    }
    return re;
}

RateBound rate_bound_constants(const Network& net, const std::vector<double>& rates,
                               TrafficLimit w) {
    if (int(rates.size()) != net.num_pairs())
        throw StructuralError("rate_bound_constants: rates size mismatch");
    const PolyOrders po = poly_orders(net);
    RateBound rb;

    const bool heavy = w == TrafficLimit::Heavy;
    const double ord = heavy ? po.net_d : po.net_q;
    const auto& slow = heavy ? po.slow_heavy : po.slow_light;
    const double gap = heavy ? po.gap_heavy : po.gap_light;
    const auto& tight = heavy ? po.tight_pairs_heavy : po.tight_pairs_light;

    std::vector<bool> is_slow(net.num_edges(), false);
    for (int e : slow) is_slow[e] = true;

    rb.H = kInf;
    for (int e = 0; e < net.num_edges(); ++e) {
        const auto& c = net.edge(e).cost;
        if (c.is_zero()) continue;  // contributes nothing to Opt
        for (const auto& [k, coeff] : c.poly_terms()) {
            if (heavy) {
                if (k < ord) rb.G += (ord - k) / (k + 1.0) * coeff;
                if (!is_slow[e]) rb.B += coeff;
            } else {
                if (k > ord) rb.G += (k - ord) / (k + 1.0) * coeff;
                if (!is_slow[e]) rb.B += (k + 1.0) * coeff;
            }
        }
        const double lead_deg = heavy ? po.edge_d[e] : po.edge_q[e];
        const double lead = c.coeff_at(lead_deg);
        rb.H = std::min(rb.H, lead);
        if (is_slow[e]) {
            const double slow_lead = heavy ? lead : (po.edge_q[e] + 1.0) * lead;
            rb.c0 = rb.c0 == 0.0 ? slow_lead : std::min(rb.c0, slow_lead);
        }
    }
    if (!std::isfinite(rb.H)) throw HypothesisError("rate_bound_constants: all costs are zero");

    if (!slow.empty()) rb.D = rb.B * std::pow(rb.B / rb.c0, 1.0 / gap) * double(slow.size());

    if (tight.empty()) throw HypothesisError("rate_bound_constants: no tight OD pair");
    rb.kappa = 1.0 / (double(tight.size()) * double(net.num_paths()));
    rb.eps = 0.0;
    for (int i : tight) rb.eps += rates.at(i);
    if (rb.eps <= 0.0)
        throw HypothesisError("rate_bound_constants: tight pairs carry no inflow (eps = 0)");

    rb.Hbar = rb.H * std::pow(rb.kappa * rb.eps, ord + 1.0);
    rb.K1 = rb.G / rb.Hbar;
    rb.Ka = slow.empty() ? 0.0 : rb.D / rb.Hbar;

    if (heavy) {
        rb.exponent = slow.empty() ? 1.0 : 1.0 - ord / gap;
        rb.M0 = 1.0 / (rb.kappa * rb.eps);
        if (!slow.empty()) {
            if (ord > 0.0)
                rb.M0 = std::max(rb.M0, std::pow(rb.c0 / rb.B, 1.0 / ord));
            else if (rb.B < rb.c0)
                rb.M0 = kInf;  // degenerate: proof condition B M^d >= c0 unreachable
        }
    } else {
        rb.exponent = slow.empty() ? 1.0 : (gap > 0.0 ? ord / gap - 1.0 : kInf);
        rb.M0 = 1.0;
        if (!slow.empty()) rb.M0 = std::min(rb.M0, std::pow(rb.c0 / rb.B, 1.0 / ord));
    }
    return rb;
}

LimitValue limit_value(const Network& net, const std::vector<double>& rates,
                       const Benchmark& bench, TrafficLimit w, const LimitDetectConfig& cfg) {
    if (int(rates.size()) != net.num_pairs())
        throw StructuralError("limit_value: rates size mismatch");
    const ClassificationReport rep = classify(net, bench, w, cfg);
    const double beta = bench.rv_degree(net, w);
    const double rho = 1.0 + beta;

    // Admissible paths: no slow edge.
    std::vector<std::vector<int>> adm(net.num_pairs());
    bool has_tight_with_rate = false;
    for (int i = 0; i < net.num_pairs(); ++i) {
        const auto& paths = net.pair(i).paths;
        for (size_t p = 0; p < paths.size(); ++p)
            if (!rep.path_indices[i][p].is_inf()) adm[i].push_back(int(p));
        if (adm[i].empty())
            throw HypothesisError("limit_value: pair " + std::to_string(i) +
                                  " has no path free of slow edges");
        if (rep.pair_classes[i] == EdgeClass::Tight && rates[i] > 0.0)
            has_tight_with_rate = true;
    }
    if (!has_tight_with_rate)
        throw HypothesisError("limit_value: no tight OD pair with positive relative inflow");

    const int E = net.num_edges();
    std::vector<double> alpha(E, 0.0);
    std::vector<bool> finite_alpha(E, false);
    for (int e = 0; e < E; ++e)
        if (rep.edge_indices[e].is_finite()) {
            alpha[e] = rep.edge_indices[e].value();
            finite_alpha[e] = true;
        }

    // Frank-Wolfe over the product of restricted simplices.
    std::vector<std::vector<double>> y(net.num_pairs());
    for (int i = 0; i < net.num_pairs(); ++i)
        y[i].assign(adm[i].size(), 1.0 / double(adm[i].size()));

    const auto zeta_of = [&](const std::vector<std::vector<double>>& yy) {
        std::vector<double> z(E, 0.0);
        for (int i = 0; i < net.num_pairs(); ++i)
            for (size_t a = 0; a < adm[i].size(); ++a) {
                const double m = rates[i] * yy[i][a];
                if (m == 0.0) continue;
                for (int e : net.pair(i).paths[adm[i][a]]) z[e] += m;
            }
        return z;
    };
    const auto value_of = [&](const std::vector<double>& z) {
        double v = 0.0;
        for (int e = 0; e < E; ++e)
            if (finite_alpha[e] && z[e] > 0.0) v += alpha[e] * std::pow(z[e], rho);
        return v;
    };

    std::vector<double> z = zeta_of(y);
    double V = value_of(z);
    for (int it = 0; it < 100000; ++it) {
        std::vector<double> grad_edge(E, 0.0);
        for (int e = 0; e < E; ++e)
            if (finite_alpha[e]) grad_edge[e] = alpha[e] * rho * std::pow(z[e], rho - 1.0);
        std::vector<int> best(net.num_pairs(), 0);
        double gap = 0.0;
        for (int i = 0; i < net.num_pairs(); ++i) {
            std::vector<double> g(adm[i].size(), 0.0);
            for (size_t a = 0; a < adm[i].size(); ++a)
                for (int e : net.pair(i).paths[adm[i][a]]) g[a] += grad_edge[e] * rates[i];
            int b = 0;
            for (size_t a = 1; a < adm[i].size(); ++a)
                if (g[a] < g[b]) b = int(a);
            best[i] = b;
            for (size_t a = 0; a < adm[i].size(); ++a) gap += y[i][a] * g[a];
            gap -= g[b];
        }
        gap = std::max(gap, 0.0);
        if (V <= 0.0 || gap <= 1e-10 * std::max(V, 1e-300)) break;

        std::vector<double> dz(E, 0.0);
        for (int i = 0; i < net.num_pairs(); ++i)
            for (size_t a = 0; a < adm[i].size(); ++a) {
                const double delta = ((int(a) == best[i] ? 1.0 : 0.0) - y[i][a]) * rates[i];
                if (delta == 0.0) continue;
                for (int e : net.pair(i).paths[adm[i][a]]) dz[e] += delta;
            }
        const auto hprime = [&](double t) {
            double s = 0.0;
            for (int e = 0; e < E; ++e)
                if (finite_alpha[e] && dz[e] != 0.0)
                    s += alpha[e] * rho * std::pow(std::max(z[e] + t * dz[e], 0.0), rho - 1.0) *
                         dz[e];
            return s;
        };
        double t = 1.0;
        if (hprime(1.0) > 0.0) {
            double lo = 0.0, hi = 1.0;
            for (int j = 0; j < 100 && hi - lo > 1e-14; ++j) {
                const double mid = 0.5 * (lo + hi);
                if (hprime(mid) > 0.0) hi = mid;
                else lo = mid;
            }
            t = 0.5 * (lo + hi);
        }
        for (int i = 0; i < net.num_pairs(); ++i)
            for (size_t a = 0; a < adm[i].size(); ++a)
                y[i][a] += t * ((int(a) == best[i] ? 1.0 : 0.0) - y[i][a]);
        z = zeta_of(y);
        V = value_of(z);
    }

    if (!(V > 0.0) || !std::isfinite(V))
        throw HypothesisError("limit_value: limit value is degenerate (V = " +
                              std::to_string(V) + ")");

    LimitValue lv;
    lv.rho = rho;
    lv.beta = beta;
    lv.value = V;
    lv.benchmark = bench;
    lv.benchmark_cost = bench.as_cost(net);
    lv.zeta = z;
    lv.allocation.resize(net.num_pairs());
    for (int i = 0; i < net.num_pairs(); ++i) {
        lv.allocation[i].assign(net.pair(i).paths.size(), 0.0);
        for (size_t a = 0; a < adm[i].size(); ++a) lv.allocation[i][adm[i][a]] = y[i][a];
    }
    return lv;
}

PoaLimitVerdict predict_poa_limit(const Network& net, const std::vector<double>& rates,
                                  TrafficLimit w, const LimitDetectConfig& cfg) {
    PoaLimitVerdict v;
    Benchmark bench;
    try {
        bench = auto_benchmark(net, w, cfg);
    } catch (const HypothesisError& e) {
        v.reason = std::string("no common benchmark: ") + e.what();
        return v;
    }
    ClassificationReport rep;
    try {
        rep = classify(net, bench, w, cfg);
    } catch (const HypothesisError& e) {
        v.reason = std::string("classification failed: ") + e.what();
        return v;
    }
    v.benchmark = bench;
    for (int i = 0; i < net.num_pairs(); ++i)
        if (rep.pair_indices[i].is_inf()) {
            v.reason = "pair " + std::to_string(i) + " has no non-slow path";
            return v;
        }
    if (!rep.tight) {
        v.reason = "network is not tight under the selected benchmark";
        return v;
    }
    double tight_rate = 0.0;
    for (int i = 0; i < net.num_pairs(); ++i)
        if (rep.pair_classes[i] == EdgeClass::Tight && i < int(rates.size()))
            tight_rate += rates[i];
    if (tight_rate <= 0.0) {
        v.reason = "tight pairs carry no inflow";
        return v;
    }
    v.converges_to_one = true;
    return v;
}

}  // namespace wardrop
