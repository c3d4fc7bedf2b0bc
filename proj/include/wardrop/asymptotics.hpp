#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wardrop/network.hpp"

namespace wardrop {

enum class EdgeClass { Fast, Tight, Slow };

inline const char* class_name(EdgeClass c) {
    switch (c) {
        case EdgeClass::Fast: return "fast";
        case EdgeClass::Tight: return "tight";
        default: return "slow";
    }
}

/// Regularly varying reference function against which edge costs are
/// compared at a traffic limit.
struct Benchmark {
    enum class Kind { Monomial, ConstantOne, EdgeCost };
    Kind kind = Kind::ConstantOne;
    double degree = 0.0;  // Monomial only
    int edge = -1;        // EdgeCost only

    static Benchmark monomial(double q) { return {Kind::Monomial, q, -1}; }
    static Benchmark constant_one() { return {Kind::ConstantOne, 0.0, -1}; }
    static Benchmark edge_cost(int e) { return {Kind::EdgeCost, 0.0, e}; }

    /// The benchmark as a cost function (EdgeCost copies the referenced cost).
    CostFunction as_cost(const Network& net) const;
    /// Regular-variation degree beta at the limit. Throws HypothesisError for
    /// non-regularly-varying edge costs (oscillating phases, un-hinted
    /// Generic).
    double rv_degree(const Network& net, TrafficLimit w) const;
    std::string describe() const;
};

/// Tuning for numeric ratio-limit detection on a geometric grid toward the
/// limit (heavy: start, start*factor, ...; light: reciprocal grid).
struct LimitDetectConfig {
    int points = 20;
    double factor = 10.0;
    double start = 10.0;
    double spread_tol = 1e-3;
    double cap = 1e12;
    int window = 5;  // trailing samples examined
};

/// lim_{x->w} a(x) / b(x) as an extended real; undef when the ratio
/// oscillates (not regularly comparable). Structured families are compared
/// exactly by their sparse powers; declared RV-degree hints decide strict
/// inequalities; everything else goes through the numeric grid.
ExtReal ratio_limit(const CostFunction& a, const CostFunction& b, TrafficLimit w,
                    const LimitDetectConfig& cfg = {});

/// Index of an edge cost relative to a benchmark at the limit.
ExtReal edge_index(const Network& net, int e, const Benchmark& bench, TrafficLimit w,
                   const LimitDetectConfig& cfg = {});

/// Fast/tight/slow classification of edges, paths, OD pairs, and the
/// network. Path index = max over its edges, pair index = min over its
/// paths, network index = max over pairs (min over paths for one pair).
struct ClassificationReport {
    TrafficLimit limit = TrafficLimit::Heavy;
    Benchmark benchmark;
    std::vector<ExtReal> edge_indices;
    std::vector<EdgeClass> edge_classes;
    std::vector<std::vector<ExtReal>> path_indices;  // [pair][path]
    std::vector<std::vector<EdgeClass>> path_classes;
    std::vector<ExtReal> pair_indices;
    std::vector<EdgeClass> pair_classes;
    ExtReal network_index;
    bool tight = false;  // 0 < network index < inf
};

ClassificationReport classify(const Network& net, const Benchmark& bench, TrafficLimit w,
                              const LimitDetectConfig& cfg = {});

/// Benchmark selection by the total-preorder construction over pairwise edge
/// ratio limits: pick the maximal edge of each path, the path with minimal
/// such edge per pair, and the maximal of those across pairs. The network is
/// tight under the returned benchmark. Throws HypothesisError naming the
/// offending edge pair when some pairwise limit does not exist.
Benchmark auto_benchmark(const Network& net, TrafficLimit w, const LimitDetectConfig& cfg = {});

/// Polynomial order machinery. Edge orders are the smallest (q_e) and
/// largest (d_e) degrees with positive coefficient, with q_e = +inf and
/// d_e = 0 for identically zero costs. Light aggregation: path = min over
/// edges, pair = max over paths, network = min over pairs; heavy swaps the
/// operators.
struct PolyOrders {
    std::vector<double> edge_q, edge_d;
    std::vector<std::vector<double>> path_q, path_d;  // [pair][path]
    std::vector<double> pair_q, pair_d;
    double net_q = 0.0, net_d = 0.0;
    std::vector<int> slow_light, slow_heavy;  // slow edge sets
    double gap_light = 0.0;  // q~ = max slow-edge q_e; -inf when empty
    double gap_heavy = 0.0;  // d~ = min slow-edge d_e; +inf when empty
    std::vector<int> tight_pairs_light, tight_pairs_heavy;
};

/// Requires every cost to have a sparse-power form (Polynomial, Bpr, or a
/// phase-free oscillating monomial).
PolyOrders poly_orders(const Network& net);

struct RateEstimate {
    enum class Provenance { TheoremExponent, PigouClosedForm, EmpiricalFit };
    double exponent = 0.0;
    std::optional<double> constant;
    Provenance provenance = Provenance::TheoremExponent;
    /// Theorem exponents: true when the slow set is empty, in which case
    /// K_a = 0 and the linear term governs (a = 1).
    bool slow_set_empty = false;
};

/// Theorem rate exponent from the polynomial orders: light a = q/q~ - 1,
/// heavy a = 1 - d/d~; a = 1 with slow_set_empty when there are no slow
/// edges.
RateEstimate rate_exponent(const Network& net, TrafficLimit w);

/// Closed-form Pigou two-link asymptotics, 0 < d1 <= d2:
///   light: a = d2/d1 - 1,  b = d1 ((1+d2)/(1+d1))^(1+1/d1) - d2
///   heavy: a = 1 - d1/d2,  b = d2 ((1+d1)/(1+d2))^(1+1/d2) - d1
/// PoA = 1 + b M^a + o(M^a) toward the light limit and
/// PoA = 1 + b M^-a + o(M^-a) toward the heavy limit; b = 0 iff d1 = d2.
RateEstimate pigou_asymptotics(double d1, double d2, TrafficLimit w);

/// Explicit bound constants: PoA <= 1 + K1 M + Ka M^a for M <= M0 (light)
/// and PoA <= 1 + K1/M + Ka/M^a for M >= M0 (heavy).
struct RateBound {
    double K1 = 0.0, Ka = 0.0;
    double exponent = 0.0;
    double M0 = 0.0;  // validity threshold
    // Construction internals, exposed for reporting.
    double G = 0.0, B = 0.0, c0 = 0.0, D = 0.0, H = 0.0, Hbar = 0.0;
    double kappa = 0.0, eps = 0.0;
};

/// Bound constants for polynomial-cost networks under fixed relative
/// inflows. Throws HypothesisError when no tight pair carries inflow.
RateBound rate_bound_constants(const Network& net, const std::vector<double>& rates,
                               TrafficLimit w);

/// Limit problem V_rho(lambda) = min over normalized allocations y of
/// sum_e alpha_e zeta_e(y, lambda)^rho, with slow-edge paths excluded a
/// priori. Opt(Gamma_M) ~ value * g(M) with g(M) = M c(M) for the benchmark
/// function c.
struct LimitValue {
    double rho = 1.0;
    double beta = 0.0;
    double value = 0.0;
    std::vector<std::vector<double>> allocation;  // y, per pair per path
    std::vector<double> zeta;                     // normalized loads at y
    Benchmark benchmark;
    CostFunction benchmark_cost = CostFunction::constant(1.0);

    /// Predicted optimum scaling V * M * c(M).
    double predicted_optimum(double M) const { return value * M * benchmark_cost(M); }
};

LimitValue limit_value(const Network& net, const std::vector<double>& rates,
                       const Benchmark& bench, TrafficLimit w,
                       const LimitDetectConfig& cfg = {});

/// Sufficient-condition verdict for PoA -> 1 along the limit.
struct PoaLimitVerdict {
    bool converges_to_one = false;
    std::string reason;  // failed condition when inconclusive
    std::optional<Benchmark> benchmark;
};

PoaLimitVerdict predict_poa_limit(const Network& net, const std::vector<double>& rates,
                                  TrafficLimit w, const LimitDetectConfig& cfg = {});

}  // namespace wardrop
