#pragma once

#include <map>
#include <string>
#include <vector>

#include "wardrop/network.hpp"

namespace wardrop {

/// Raw link record from a TNTP network file (1-based node ids as on disk).
struct TntpLink {
    int init_node = 0;
    int term_node = 0;
    double capacity = 0.0;
    double length = 0.0;
    double free_flow_time = 0.0;
    double b = 0.0;
    double power = 0.0;
    double speed = 0.0;
    double toll = 0.0;
    int type = 0;
};

struct TntpNetwork {
    int num_nodes = 0;
    int num_links = 0;
    int first_thru_node = 1;
    std::vector<TntpLink> links;
};

struct TntpTrips {
    double declared_total = 0.0;
    std::map<std::pair<int, int>, double> od_flow;  // 1-based (origin, dest), zero entries dropped
    bool total_mismatch = false;  // parsed total differs from the declared one by > 1e-6 relative

    double parsed_total() const;
};

/// Parses the standard TNTP network format: metadata tags, `~` comment
/// lines, whitespace-separated link rows terminated by `;`. Each link's cost
/// is BPR: fft * (1 + b (x/capacity)^power). Throws ParseError with a line
/// number on malformed input.
TntpNetwork parse_tntp_net(const std::string& text);

/// Parses a TNTP trips table: `<TOTAL OD FLOW>` metadata and `Origin i`
/// blocks with `j : flow ;` entries.
TntpTrips parse_tntp_trips(const std::string& text);

/// Assembles a routing game from parsed TNTP data: one OD pair per nonzero
/// entry (origin != dest), path sets restricted to the k shortest loopless
/// paths under free-flow travel time.
struct TntpScenario {
    Network net;
    Demand demand;
    std::vector<std::pair<int, int>> od;  // 1-based, in pair order
};

TntpScenario build_tntp_scenario(const TntpNetwork& tn, const TntpTrips& trips, int k);

}  // namespace wardrop
