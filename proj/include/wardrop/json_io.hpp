#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "wardrop/asymptotics.hpp"
#include "wardrop/network.hpp"
#include "wardrop/poa.hpp"
#include "wardrop/solver.hpp"

namespace wardrop {

using json = nlohmann::json;

/// Versioned network+demand document (schema "wardrop-network/1"): vertices,
/// edges with cost-variant tags and parameters, pairs with path edge-index
/// lists and inflows. Generic costs serialize only when created through
/// named_cost().
json network_to_json(const Network& net, const std::optional<std::vector<double>>& inflows = {});

struct NetworkDocument {
    Network net;
    std::optional<std::vector<double>> inflows;
};

/// Throws ParseError on schema violations (unknown cost tag, missing path
/// set, bad version).
NetworkDocument network_from_json(const json& doc);

json solve_result_to_json(const SolveResult& r);
json classification_to_json(const ClassificationReport& rep);
json poly_orders_to_json(const PolyOrders& po);
json rate_estimate_to_json(const RateEstimate& re);
json rate_bound_to_json(const RateBound& rb);
json limit_value_to_json(const LimitValue& lv);
json sweep_to_json(const SweepResult& sw);
json salience_to_json(const SalienceReport& rep);

}  // namespace wardrop
