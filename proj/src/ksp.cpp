#include "wardrop/ksp.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <set>

namespace wardrop {

namespace {

struct Candidate {
    double cost;
    Path path;

    bool operator>(const Candidate& o) const {
        if (cost != o.cost) return cost > o.cost;
        return path > o.path;  // lexicographic edge-index tie-break
    }
};

// Dijkstra over edge ids with banned vertices/edges; returns the cheapest
// path (lexicographically smallest edge sequence among equal costs) or
// nullopt. Queue entries carry their path so equal-cost ties settle
// deterministically; lazy deletion keeps it simple.
std::optional<Candidate> dijkstra(int num_vertices, const std::vector<Edge>& edges,
                                  const std::vector<double>& w, int source, int target,
                                  const std::vector<bool>& vertex_banned,
                                  const std::vector<bool>& edge_banned) {
    const int V = num_vertices;
    std::vector<std::vector<int>> out(V);
    for (int e = 0; e < int(edges.size()); ++e)
        if (!edge_banned[e]) out[edges[e].tail].push_back(e);

    struct QE {
        double d;
        Path p;
        int v;
        bool operator>(const QE& o) const {
            if (d != o.d) return d > o.d;
            return p > o.p;
        }
    };
    std::vector<bool> done(V, false);
    std::priority_queue<QE, std::vector<QE>, std::greater<>> q;
    if (vertex_banned[source]) return std::nullopt;
    q.push({0.0, {}, source});
    while (!q.empty()) {
        QE cur = q.top();
        q.pop();
        if (done[cur.v]) continue;
        done[cur.v] = true;
        if (cur.v == target) return Candidate{cur.d, cur.p};
        for (int e : out[cur.v]) {
            const int v = edges[e].head;
            if (done[v] || (vertex_banned[v] && v != target)) continue;
            QE nxt{cur.d + w[e], cur.p, v};
            nxt.p.push_back(e);
            q.push(std::move(nxt));
        }
    }
    return std::nullopt;
}

}  // namespace

KspResult k_shortest_paths(int num_vertices, const std::vector<Edge>& edges, int origin,
                           int dest, int k, const std::function<double(const Edge&)>& metric,
                           const std::vector<bool>& through_ban) {
    if (k < 1) throw StructuralError("k_shortest_paths: k must be >= 1");
    if (origin < 0 || origin >= num_vertices || dest < 0 || dest >= num_vertices)
        throw StructuralError("k_shortest_paths: endpoint out of range");

    const int E = int(edges.size());
    std::vector<double> w(E);
    for (int e = 0; e < E; ++e) {
        w[e] = metric ? metric(edges[e]) : edges[e].cost(0.0);
        if (w[e] < 0.0) throw StructuralError("k_shortest_paths: negative edge weight");
    }

    std::vector<bool> base_ban(num_vertices, false);
    if (!through_ban.empty()) {
        if (int(through_ban.size()) != num_vertices)
            throw StructuralError("k_shortest_paths: through_ban size mismatch");
        base_ban = through_ban;
        base_ban[origin] = false;  // endpoints are always reachable
    }

    std::vector<bool> no_edge(E, false);
    const auto first = dijkstra(num_vertices, edges, w, origin, dest, base_ban, no_edge);
    if (!first)
        throw StructuralError("k_shortest_paths: origin and destination are not connected");

    KspResult res;
    res.paths.push_back(first->path);
    std::set<Path> known{first->path};
    // Candidate pool ordered by (cost, lexicographic sequence).
    auto cmp = [](const Candidate& a, const Candidate& b) { return a > b; };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(cmp)> pool(cmp);

    while (int(res.paths.size()) < k) {
        const Path& prev = res.paths.back();
        // Spur from every prefix of the previous k-shortest path.
        std::vector<int> prefix_vertices{origin};
        for (int e : prev) prefix_vertices.push_back(edges[e].head);

        for (size_t spur = 0; spur < prev.size(); ++spur) {
            const int spur_vertex = prefix_vertices[spur];
            const Path root(prev.begin(), prev.begin() + spur);

            std::vector<bool> vban = base_ban;
            std::vector<bool> eban(E, false);
            // Ban edges that would reproduce an already-found path with this root.
            for (const Path& p : known)
                if (p.size() > spur && std::equal(root.begin(), root.end(), p.begin()))
                    eban[p[spur]] = true;
            // Loopless: ban the root's interior vertices.
            for (size_t j = 0; j < spur; ++j) vban[prefix_vertices[j]] = true;

            const auto tail = dijkstra(num_vertices, edges, w, spur_vertex, dest, vban, eban);
            if (!tail) continue;
            Candidate cand;
            cand.path = root;
            cand.path.insert(cand.path.end(), tail->path.begin(), tail->path.end());
            cand.cost = 0.0;
            for (int e : cand.path) cand.cost += w[e];
            if (!known.count(cand.path)) pool.push(std::move(cand));
        }

        Candidate next;
        bool found = false;
        while (!pool.empty()) {
            next = pool.top();
            pool.pop();
            if (!known.count(next.path)) {
                found = true;
                break;
            }
        }
        if (!found) {
            res.exhausted = true;
            break;
        }
        known.insert(next.path);
        res.paths.push_back(next.path);
    }
    return res;
}

KspResult k_shortest_paths(const Network& net, int origin, int dest, int k,
                           const std::function<double(const Edge&)>& metric) {
    return k_shortest_paths(net.num_vertices(), net.edges(), origin, dest, k, metric);
}

}  // namespace wardrop
