#include "wardrop/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace wardrop {

namespace {

std::string pair_tag(int i) { return "pair " + std::to_string(i); }

}  // namespace

Network::Network(int num_vertices, std::vector<Edge> edges, std::vector<OdPair> pairs)
    : num_vertices_(num_vertices), edges_(std::move(edges)), pairs_(std::move(pairs)) {
    if (num_vertices_ <= 0) throw StructuralError("network: vertex count must be positive");
    for (size_t e = 0; e < edges_.size(); ++e) {
        const auto& ed = edges_[e];
        if (ed.tail < 0 || ed.tail >= num_vertices_ || ed.head < 0 || ed.head >= num_vertices_)
            throw StructuralError("network: edge " + std::to_string(e) + " endpoint out of range");
    }
    std::set<Path> seen;
    for (size_t i = 0; i < pairs_.size(); ++i) {
        const auto& pr = pairs_[i];
        if (pr.origin < 0 || pr.origin >= num_vertices_ || pr.dest < 0 || pr.dest >= num_vertices_)
            throw StructuralError("network: " + pair_tag(int(i)) + " endpoint out of range");
        if (pr.paths.empty())
            throw StructuralError("network: " + pair_tag(int(i)) + " has an empty path set");
        for (const auto& p : pr.paths) {
            if (p.empty())
                throw StructuralError("network: " + pair_tag(int(i)) + " contains an empty path");
            int at = pr.origin;
            for (int e : p) {
                if (e < 0 || e >= int(edges_.size()))
                    throw StructuralError("network: path edge index " + std::to_string(e) +
                                          " out of range in " + pair_tag(int(i)));
                if (edges_[e].tail != at)
                    throw StructuralError("network: path does not chain head-to-tail in " +
                                          pair_tag(int(i)));
                at = edges_[e].head;
            }
            if (at != pr.dest)
                throw StructuralError("network: path does not end at the destination of " +
                                      pair_tag(int(i)));
            if (!seen.insert(p).second)
                throw StructuralError("network: path sets are not disjoint across pairs");
            num_paths_ += 1;
            max_path_length_ = std::max(max_path_length_, int(p.size()));
        }
    }
    if (pairs_.empty()) throw StructuralError("network: no OD pairs");
}

Demand::Demand(std::vector<double> inflows) : inflows_(std::move(inflows)), total_(0.0) {
    for (double m : inflows_) {
        if (m < 0.0 || !std::isfinite(m)) throw StructuralError("demand: inflows must be >= 0");
        total_ += m;
    }
    if (total_ <= 0.0) throw StructuralError("demand: total inflow must be positive");
}

std::vector<double> Demand::rates() const {
    std::vector<double> r(inflows_.size());
    for (size_t i = 0; i < inflows_.size(); ++i) r[i] = inflows_[i] / total_;
    return r;
}

FlowProfile uniform_flow(const Network& net, const Demand& demand) {
    FlowProfile f;
    f.flows.resize(net.num_pairs());
    for (int i = 0; i < net.num_pairs(); ++i) {
        const int np = int(net.pair(i).paths.size());
        f.flows[i].assign(np, demand.inflow(i) / np);
    }
    return f;
}

void check_feasible(const Network& net, const Demand& demand, const FlowProfile& flow) {
    if (int(flow.flows.size()) != net.num_pairs() || demand.size() != net.num_pairs())
        throw StructuralError("flow: wrong number of pairs");
    const double tol = 1e-12 * demand.total();
    for (int i = 0; i < net.num_pairs(); ++i) {
        if (flow.flows[i].size() != net.pair(i).paths.size())
            throw StructuralError("flow: wrong number of paths for " + pair_tag(i));
        double sum = 0.0;
        for (double fp : flow.flows[i]) {
            if (fp < 0.0) throw StructuralError("flow: negative path flow in " + pair_tag(i));
            sum += fp;
        }
        if (std::abs(sum - demand.inflow(i)) > tol)
            throw StructuralError("flow: conservation violated for " + pair_tag(i));
    }
}

LoadProfile edge_loads(const Network& net, const FlowProfile& flow) {
    if (int(flow.flows.size()) != net.num_pairs())
        throw StructuralError("edge_loads: flow defined on wrong number of pairs");
    LoadProfile x;
    x.loads.assign(net.num_edges(), 0.0);
    for (int i = 0; i < net.num_pairs(); ++i) {
        const auto& paths = net.pair(i).paths;
        if (flow.flows[i].size() != paths.size())
            throw StructuralError("edge_loads: flow not defined on all paths of " + pair_tag(i));
        for (size_t p = 0; p < paths.size(); ++p) {
            const double fp = flow.flows[i][p];
            if (fp == 0.0) continue;
            for (int e : paths[p]) x.loads[e] += fp;
        }
    }
    return x;
}

double edge_cost(const Network& net, int e, double load, CostMetric metric) {
    const auto& c = net.edge(e).cost;
    return metric == CostMetric::Latency ? c(load) : c.marginal(load);
}

double path_cost(const Network& net, const LoadProfile& loads, std::span<const int> path) {
    if (int(loads.loads.size()) != net.num_edges())
        throw StructuralError("path_cost: load profile size mismatch");
    double s = 0.0;
    for (int e : path) {
        if (e < 0 || e >= net.num_edges())
            throw StructuralError("path_cost: edge index out of range");
        s += net.edge(e).cost(loads.loads[e]);
    }
    return s;
}

double social_cost(const Network& net, const LoadProfile& loads) {
    if (int(loads.loads.size()) != net.num_edges())
        throw StructuralError("social_cost: load profile size mismatch");
    double s = 0.0;
    for (int e = 0; e < net.num_edges(); ++e) {
        const double x = loads.loads[e];
        if (x != 0.0) s += x * net.edge(e).cost(x);
    }
    return s;
}

double beckmann_potential(const Network& net, const LoadProfile& loads) {
    if (int(loads.loads.size()) != net.num_edges())
        throw StructuralError("beckmann_potential: load profile size mismatch");
    double s = 0.0;
    for (int e = 0; e < net.num_edges(); ++e) s += net.edge(e).cost.primitive(loads.loads[e]);
    return s;
}

double wardrop_residual(const Network& net, const Demand& demand, const FlowProfile& flow,
                        CostMetric metric, double use_threshold) {
    check_feasible(net, demand, flow);
    const LoadProfile x = edge_loads(net, flow);
    double worst = 0.0;
    for (int i = 0; i < net.num_pairs(); ++i) {
        const auto& paths = net.pair(i).paths;
        const double thresh = use_threshold * demand.inflow(i);
        double used_max = -1.0, all_min = std::numeric_limits<double>::infinity();
        for (size_t p = 0; p < paths.size(); ++p) {
            double c = 0.0;
            for (int e : paths[p]) c += edge_cost(net, e, x.loads[e], metric);
            all_min = std::min(all_min, c);
            if (flow.flows[i][p] > thresh) used_max = std::max(used_max, c);
        }
        if (used_max >= 0.0) worst = std::max(worst, used_max - all_min);
    }
    return worst;
}

}  // namespace wardrop
