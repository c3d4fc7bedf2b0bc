#include "wardrop/tntp.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "wardrop/ksp.hpp"

namespace wardrop {

namespace {

std::string strip(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("tntp: line " + std::to_string(line) + ": " + what);
}

// `<TAG> value` metadata line; returns the value part.
bool metadata(const std::string& line, const std::string& tag, std::string& value) {
    const auto pos = line.find(tag);
    if (pos == std::string::npos) return false;
    value = strip(line.substr(pos + tag.size()));
    return true;
}

}  // namespace

double TntpTrips::parsed_total() const {
    double t = 0.0;
    for (const auto& [od, v] : od_flow) t += v;
    return t;
}

TntpNetwork parse_tntp_net(const std::string& text) {
    TntpNetwork tn;
    bool in_body = false;
    bool saw_nodes = false, saw_links = false, saw_first = false, saw_end = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = strip(line);
        if (s.empty() || s[0] == '~') continue;
        if (!in_body) {
            std::string v;
            if (metadata(s, "<NUMBER OF NODES>", v)) {
                tn.num_nodes = std::atoi(v.c_str());
                saw_nodes = true;
            } else if (metadata(s, "<NUMBER OF LINKS>", v)) {
                tn.num_links = std::atoi(v.c_str());
                saw_links = true;
            } else if (metadata(s, "<FIRST THRU NODE>", v)) {
                tn.first_thru_node = std::atoi(v.c_str());
                saw_first = true;
            } else if (s.find("<END OF METADATA>") != std::string::npos) {
                saw_end = true;
                in_body = true;
            } else if (s[0] == '<') {
                continue;  // unrecognized metadata tag, ignored
            } else {
                fail(lineno, "link record before <END OF METADATA>");
            }
            continue;
        }
        // Link rows: 10 fields terminated by ';'. A row may omit trailing
        // fields only if the terminator is present.
        std::string row = s;
        const auto semi = row.find(';');
        if (semi == std::string::npos) fail(lineno, "link record not terminated by ';'");
        row = row.substr(0, semi);
        std::istringstream fs(row);
        TntpLink lk;
        if (!(fs >> lk.init_node >> lk.term_node >> lk.capacity >> lk.length >>
              lk.free_flow_time >> lk.b >> lk.power >> lk.speed >> lk.toll >> lk.type))
            fail(lineno, "malformed link record");
        if (lk.init_node < 1 || lk.init_node > tn.num_nodes || lk.term_node < 1 ||
            lk.term_node > tn.num_nodes)
            fail(lineno, "node index outside declared count");
        if (!(lk.capacity > 0.0)) fail(lineno, "non-positive capacity");
        tn.links.push_back(lk);
    }
    if (!saw_nodes) throw ParseError("tntp: missing <NUMBER OF NODES>");
    if (!saw_links) throw ParseError("tntp: missing <NUMBER OF LINKS>");
    if (!saw_first) throw ParseError("tntp: missing <FIRST THRU NODE>");
    if (!saw_end) throw ParseError("tntp: missing <END OF METADATA>");
    return tn;
}

TntpTrips parse_tntp_trips(const std::string& text) {
    TntpTrips tr;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int origin = -1;
    bool saw_total = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = strip(line);
        if (s.empty() || s[0] == '~') continue;
        std::string v;
        if (metadata(s, "<TOTAL OD FLOW>", v)) {
            tr.declared_total = std::atof(v.c_str());
            saw_total = true;
            continue;
        }
        if (s[0] == '<') continue;
        if (s.rfind("Origin", 0) == 0) {
            origin = std::atoi(strip(s.substr(6)).c_str());
            if (origin < 1) fail(lineno, "malformed Origin header");
            continue;
        }
        if (origin < 0) fail(lineno, "entry before any Origin header");
        // One or more `dest : flow ;` entries per line.
        std::istringstream es(s);
        std::string entry;
        while (std::getline(es, entry, ';')) {
            entry = strip(entry);
            if (entry.empty()) continue;
            const auto colon = entry.find(':');
            if (colon == std::string::npos) fail(lineno, "malformed OD entry (missing ':')");
            const std::string dst = strip(entry.substr(0, colon));
            const std::string flw = strip(entry.substr(colon + 1));
            char* endp = nullptr;
            const long dest = std::strtol(dst.c_str(), &endp, 10);
            if (dst.empty() || *endp != '\0' || dest < 1) fail(lineno, "malformed destination");
            errno = 0;
            const double flow = std::strtod(flw.c_str(), &endp);
            if (flw.empty() || *endp != '\0') fail(lineno, "malformed flow value");
            if (flow < 0.0) fail(lineno, "negative OD flow");
            if (flow > 0.0) tr.od_flow[{origin, int(dest)}] += flow;  // zero entries dropped
        }
    }
    if (!saw_total) throw ParseError("tntp: missing <TOTAL OD FLOW>");
    const double parsed = tr.parsed_total();
    if (tr.declared_total > 0.0 &&
        std::abs(parsed - tr.declared_total) > 1e-6 * tr.declared_total)
        tr.total_mismatch = true;
    return tr;
}

TntpScenario build_tntp_scenario(const TntpNetwork& tn, const TntpTrips& trips, int k) {
    if (k < 1) throw StructuralError("tntp scenario: k must be >= 1");
    std::vector<Edge> edges;
    edges.reserve(tn.links.size());
    for (const auto& lk : tn.links)
        edges.push_back({lk.init_node - 1, lk.term_node - 1,
                         CostFunction::bpr(lk.free_flow_time, lk.b, lk.capacity, lk.power)});

    // Nodes below the first-through node are zones: valid endpoints, never
    // intermediate stops.
    std::vector<bool> zone_ban(tn.num_nodes, false);
    for (int v = 0; v + 1 < tn.first_thru_node && v < tn.num_nodes; ++v) zone_ban[v] = true;

    std::vector<OdPair> pairs;
    std::vector<double> inflows;
    std::vector<std::pair<int, int>> od;
    for (const auto& [key, flow] : trips.od_flow) {
        const auto [o, d] = key;
        if (o == d) continue;
        if (o < 1 || o > tn.num_nodes || d < 1 || d > tn.num_nodes)
            throw ParseError("tntp scenario: OD pair outside node range");
        const KspResult ksp = k_shortest_paths(tn.num_nodes, edges, o - 1, d - 1, k, {}, zone_ban);
        pairs.push_back({o - 1, d - 1, ksp.paths});
        inflows.push_back(flow);
        od.emplace_back(o, d);
    }
    if (pairs.empty()) throw ParseError("tntp scenario: no nonzero OD pairs");
    return {Network(tn.num_nodes, std::move(edges), std::move(pairs)), Demand(inflows), od};
}

}  // namespace wardrop
