#pragma once

#include <functional>
#include <vector>

#include "wardrop/network.hpp"

namespace wardrop {

struct KspResult {
    std::vector<Path> paths;  // ordered by (cost, lexicographic edge sequence)
    bool exhausted = false;   // fewer than k loopless paths exist
};

/// Yen's k loopless shortest paths from origin to dest over an edge list.
/// Default metric is the zero-load (free-flow) edge cost. Deterministic:
/// ties are broken by the lexicographic edge-index sequence. Vertices with
/// through_ban set may appear only as the origin or destination, never as
/// intermediate nodes. Throws StructuralError when origin and destination
/// are not connected.
KspResult k_shortest_paths(int num_vertices, const std::vector<Edge>& edges, int origin, int dest,
                           int k, const std::function<double(const Edge&)>& metric = {},
                           const std::vector<bool>& through_ban = {});

KspResult k_shortest_paths(const Network& net, int origin, int dest, int k,
                           const std::function<double(const Edge&)>& metric = {});

}  // namespace wardrop
