#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wardrop/asymptotics.hpp"
#include "wardrop/solver.hpp"

namespace wardrop {

/// Eq / Opt with the vacuous conventions: exactly 1 when the total inflow is
/// zero or the optimal cost is below the absolute floor 1e-300.
double price_of_anarchy(const Network& net, const std::vector<double>& inflows,
                        const SolverConfig& cfg = {});

struct GridSpec {
    double from = 1e-3;
    double to = 1e3;
    int points = 20;  // log-spaced, >= 2

    std::vector<double> values() const;
};

struct SweepRow {
    double scale = 0.0;  // total inflow M, or sequence index n
    double eq = 0.0;
    double opt = 0.0;
    double poa = 1.0;
    double eq_gap = 0.0;
    double opt_gap = 0.0;
    bool converged = true;
    bool failed = false;  // solver threw; row kept, sweep continues
};

struct SweepResult {
    std::vector<SweepRow> rows;
    SolverConfig config;
    std::string scale_label = "M";

    /// CSV with header M,eq_cost,opt_cost,poa,eq_gap,opt_gap at 17
    /// significant digits; byte-stable across runs and schedules.
    std::string to_csv() const;
};

/// One PoA row per grid point, scaling the relative inflows to each total.
/// Rows are independent; `jobs` > 1 evaluates them in parallel with output
/// in grid order regardless of completion order.
SweepResult sweep(const Network& net, const std::vector<double>& rates, const GridSpec& grid,
                  const SolverConfig& cfg = {}, int jobs = 1);

/// Per-pair inflow rule n -> m_n >= 0.
struct SequenceRule {
    enum class Kind { Constant, Share, Power, Periodic, Custom };
    Kind kind = Kind::Constant;
    double value = 0.0;              // Constant: m_n = value
    double share = 0.0;              // Share: m_n = share * n
    double coeff = 0.0, power = 1.0; // Power: m_n = coeff * n^power
    double odd0 = 0.0, odd1 = 0.0;   // Periodic, n odd:  odd0 + odd1 * n
    double even0 = 0.0, even1 = 0.0; // Periodic, n even: even0 + even1 * n
    std::function<double(double)> custom;

    static SequenceRule constant(double v);
    static SequenceRule share_of_n(double s);
    static SequenceRule power_rule(double c, double p);
    static SequenceRule periodic(double odd0, double odd1, double even0, double even1);
    static SequenceRule custom_rule(std::function<double(double)> fn);

    double operator()(double n) const;
};

struct DemandSequence {
    std::vector<SequenceRule> rules;

    std::vector<double> inflows(double n) const;
    double total(double n) const;
    std::vector<double> rates(double n) const;
};

struct SalienceReport {
    std::vector<int> subset;
    long horizon = 0;
    double tail_min = 0.0;  // min over n in [horizon/2, horizon] of the subset's rate sum
    bool salient = false;
    double threshold = 1e-6;
    /// Always true: the verdict approximates a liminf at a finite horizon.
    bool finite_horizon_approximation = true;
};

/// Tail minimum of sum over the subset of lambda_n^i for n in [N/2, N];
/// salient iff it exceeds the threshold. Requires N >= 10. Tails longer than
/// 1e5 points are sampled (consecutive blocks at geometric anchors), so the
/// verdict is a finite-horizon, sampled approximation of the liminf.
SalienceReport salience_check(const DemandSequence& seq, const std::vector<int>& subset,
                              long horizon, double threshold = 1e-6);

/// PoA along a demand sequence for n = 1..horizon. Pairs with zero inflow at
/// some n carry no flow there.
SweepResult sequence_poa(const Network& net, const DemandSequence& seq, int horizon,
                         const SolverConfig& cfg = {}, int jobs = 1);

/// Power-law tail fit of PoA - 1 against M: least squares on
/// log(PoA - 1) vs log M over the tail (largest M for heavy, smallest for
/// light, one decade by default). Rows within `noise_mult` * combined solver
/// gap of PoA = 1 are dropped. The fitted constant is the geometric mean of
/// (PoA - 1) M^{-+a} over the tail. Throws HypothesisError when fewer than 5
/// usable rows remain; a degenerate fit (all rows at the noise floor,
/// consistent with PoA == 1) is reported via `constant` = nullopt and
/// exponent = 0.
RateEstimate fit_power_law(const SweepResult& result, TrafficLimit limit,
                           double tail_decades = 1.0, double noise_mult = 10.0);

/// Largest M below which equilibrium and optimum lock onto each pair's
/// minimal zero-inflow-cost paths: for every pair, the cheapest minimal path
/// at full load M stays below the cheapest non-minimal path at zero load,
/// under both the latency and the marginal-cost metrics. +inf when no pair
/// constrains.
double lock_in_threshold(const Network& net);

}  // namespace wardrop
