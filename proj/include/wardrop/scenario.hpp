#pragma once

#include <map>
#include <string>
#include <vector>

#include "wardrop/network.hpp"

namespace wardrop {

/// A builtin network plus a default split of the total inflow across pairs.
struct Scenario {
    std::string name;
    Network net;
    std::vector<double> rates;  // relative inflows, sum 1

    Demand demand(double total) const;
};

/// Evaluator registry for named generic costs (the only Generic costs that
/// can round-trip through JSON). Known names: "log1p" = log(1+x),
/// "one_plus_sqrt" = 1 + sqrt(x), "exp" = e^x. Each carries its
/// regular-variation degree hints. Throws ParseError for unknown names.
CostFunction named_cost(const std::string& name);

/// Builtin scenarios:
///   pigou_affine               two links, costs 1 and x
///   pigou_monomial(d1, d2)     two links, costs x^d1 and x^d2
///   oscillating_three_link(d)  three parallel links, degree-d oscillating
///                              costs (integer d >= 2)
///   wheatstone                 five edges, two OD pairs, costs
///                              (x, x^2, log(1+x), 1+sqrt(x), e^x)
///   uncoupled                  Pigou pair plus an independent zero-cost pair
///   braess                     four roads plus a zero-cost bridge
struct ScenarioParams {
    int d1 = 1;
    int d2 = 2;
    int d = 2;
};

Scenario builtin_scenario(const std::string& name, const ScenarioParams& params = {});

std::vector<std::string> builtin_scenario_names();

}  // namespace wardrop
