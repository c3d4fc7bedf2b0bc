#pragma once

#include <span>
#include <vector>

#include "wardrop/cost.hpp"
#include "wardrop/errors.hpp"

namespace wardrop {

using Path = std::vector<int>;  // edge indices, head-to-tail

struct Edge {
    int tail = 0;
    int head = 0;
    CostFunction cost = CostFunction::zero();
};

struct OdPair {
    int origin = 0;
    int dest = 0;
    std::vector<Path> paths;
};

/// Directed multigraph with explicit, finite, user-supplied path sets per
/// OD pair. Immutable after construction; construction validates that every
/// path chains head-to-tail from the pair's origin to its destination, that
/// path sets are nonempty, and that no path appears under two pairs.
class Network {
  public:
    Network(int num_vertices, std::vector<Edge> edges, std::vector<OdPair> pairs);

    int num_vertices() const { return num_vertices_; }
    int num_edges() const { return int(edges_.size()); }
    int num_pairs() const { return int(pairs_.size()); }
    const Edge& edge(int e) const { return edges_.at(e); }
    const std::vector<Edge>& edges() const { return edges_; }
    const OdPair& pair(int i) const { return pairs_.at(i); }
    const std::vector<OdPair>& pairs() const { return pairs_; }

    /// Total number of paths across all pairs.
    int num_paths() const { return num_paths_; }
    int max_path_length() const { return max_path_length_; }

  private:
    int num_vertices_;
    std::vector<Edge> edges_;
    std::vector<OdPair> pairs_;
    int num_paths_ = 0;
    int max_path_length_ = 0;
};

/// Per-pair traffic inflows m^i >= 0 with positive total M. Relative rates
/// lambda^i = m^i / M lie on the simplex.
class Demand {
  public:
    explicit Demand(std::vector<double> inflows);

    int size() const { return int(inflows_.size()); }
    double inflow(int i) const { return inflows_.at(i); }
    const std::vector<double>& inflows() const { return inflows_; }
    double total() const { return total_; }
    double rate(int i) const { return inflows_.at(i) / total_; }
    std::vector<double> rates() const;

  private:
    std::vector<double> inflows_;
    double total_;
};

/// Path-flow vector, stored per pair in path order.
struct FlowProfile {
    std::vector<std::vector<double>> flows;

    double& at(int pair, int path) { return flows.at(pair).at(path); }
    double at(int pair, int path) const { return flows.at(pair).at(path); }
};

/// Per-edge load vector.
struct LoadProfile {
    std::vector<double> loads;

    double at(int e) const { return loads.at(e); }
};

/// Uniform split of each pair's inflow across its paths.
FlowProfile uniform_flow(const Network& net, const Demand& demand);

/// Throws StructuralError unless the flow is nonnegative, defined on all
/// paths of `net`, and conserves each pair's inflow within 1e-12 * M.
void check_feasible(const Network& net, const Demand& demand, const FlowProfile& flow);

/// Loads x_e = sum of flows over the paths containing e.
LoadProfile edge_loads(const Network& net, const FlowProfile& flow);

/// Cost of an edge sequence under the given loads: sum over e of c_e(x_e).
/// The sequence need not belong to any pair's path set.
double path_cost(const Network& net, const LoadProfile& loads, std::span<const int> path);

enum class CostMetric { Latency, Marginal };

double edge_cost(const Network& net, int e, double load, CostMetric metric = CostMetric::Latency);

/// Social cost L(x) = sum_e x_e c_e(x_e).
double social_cost(const Network& net, const LoadProfile& loads);

/// Beckmann potential sum_e C_e(x_e) with C_e the primitive of c_e.
double beckmann_potential(const Network& net, const LoadProfile& loads);

/// Equilibrium violation: max over pairs of (max cost among used paths) -
/// (min cost over all paths of the pair). A path counts as used when its
/// flow exceeds use_threshold * m^i. Zero at an exact equilibrium; with
/// metric = Marginal this characterizes social optima instead.
double wardrop_residual(const Network& net, const Demand& demand, const FlowProfile& flow,
                        CostMetric metric = CostMetric::Latency, double use_threshold = 1e-9);

}  // namespace wardrop
