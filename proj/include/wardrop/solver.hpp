#pragma once

#include <optional>

#include "wardrop/network.hpp"

namespace wardrop {

struct SolverConfig {
    double rel_gap_tol = 1e-10;
    int max_iterations = 200000;
    double line_search_tol = 1e-14;  // on the step parameter
    int brute_force_resolution = 1000;
};

enum class SolveObjective { Beckmann, Social };

struct SolveResult {
    FlowProfile flow;
    LoadProfile loads;
    /// Social cost L(x) of the returned loads: Eq for equilibria, Opt for optima.
    double objective = 0.0;
    double rel_gap = 0.0;
    long iterations = 0;
    bool converged = false;
    /// Social objective only: a sampled convexity check on x c(x) failed for
    /// some Generic edge, so the result is a stationary point, not certified
    /// global.
    bool convexity_warning = false;
    /// Brute force only: grid resolution was reduced to keep the enumeration
    /// tractable.
    bool resolution_reduced = false;
};

/// Wardrop equilibrium via path-based Frank-Wolfe on the Beckmann potential:
/// per-pair all-or-nothing direction onto the minimum-current-cost path
/// (ties broken towards the lowest path index), exact line search by
/// derivative bisection, stopping when <c(x), x - x_aon> / L(x) <= tol.
SolveResult solve_wardrop(const Network& net, const Demand& demand, const SolverConfig& cfg = {},
                          const std::optional<FlowProfile>& initial = std::nullopt);

/// Social optimum: Frank-Wolfe on L(x) with directions given by current
/// marginal costs c(x) + x c'(x); same stopping rule on the gap of L.
SolveResult solve_optimum(const Network& net, const Demand& demand, const SolverConfig& cfg = {},
                          const std::optional<FlowProfile>& initial = std::nullopt);

/// Exhaustive per-pair simplex-grid minimization (test oracle). Requires at
/// most 6 paths in total; after the grid pass a local refinement runs at 10x
/// resolution around the incumbent. Within O(1/resolution) of the optimum in
/// flow space.
SolveResult brute_force_solve(const Network& net, const Demand& demand, SolveObjective objective,
                              int resolution = 1000);

}  // namespace wardrop
