#include "wardrop/scenario.hpp"

#include <cmath>

namespace wardrop {

Demand Scenario::demand(double total) const {
    std::vector<double> m(rates.size());
    for (size_t i = 0; i < rates.size(); ++i) m[i] = total * rates[i];
    return Demand(m);
}

CostFunction named_cost(const std::string& name) {
    if (name == "log1p")
        return CostFunction::generic("log1p", [](double x) { return std::log1p(x); },
                                     ExtReal::finite(1.0), ExtReal::finite(0.0));
    if (name == "one_plus_sqrt")
        return CostFunction::generic("one_plus_sqrt", [](double x) { return 1.0 + std::sqrt(x); },
                                     ExtReal::finite(0.0), ExtReal::finite(0.5));
    if (name == "exp")
        return CostFunction::generic("exp", [](double x) { return std::exp(x); },
                                     ExtReal::finite(0.0), ExtReal::inf());
    throw ParseError("named_cost: unknown generic cost '" + name + "'");
}

namespace {

Scenario pigou_affine() {
    std::vector<Edge> edges{
        {0, 1, CostFunction::constant(1.0)},
        {0, 1, CostFunction::monomial(1)},
    };
    std::vector<OdPair> pairs{{0, 1, {{0}, {1}}}};
    return {"pigou_affine", Network(2, std::move(edges), std::move(pairs)), {1.0}};
}

Scenario pigou_monomial(int d1, int d2) {
    if (d1 < 1 || d2 < d1)
        throw StructuralError("pigou_monomial: need 1 <= d1 <= d2");
    std::vector<Edge> edges{
        {0, 1, CostFunction::monomial(d1)},
        {0, 1, CostFunction::monomial(d2)},
    };
    std::vector<OdPair> pairs{{0, 1, {{0}, {1}}}};
    return {"pigou_monomial", Network(2, std::move(edges), std::move(pairs)), {1.0}};
}

Scenario oscillating_three_link(int d) {
    if (d < 2) throw StructuralError("oscillating_three_link: need integer d >= 2");
    std::vector<Edge> edges{
        {0, 1, CostFunction::oscillating(d, OscPhase::Sine)},
        {0, 1, CostFunction::oscillating(d, OscPhase::None)},
        {0, 1, CostFunction::oscillating(d, OscPhase::Cosine)},
    };
    std::vector<OdPair> pairs{{0, 1, {{0}, {1}, {2}}}};
    return {"oscillating_three_link", Network(2, std::move(edges), std::move(pairs)), {1.0}};
}

// Vertices: 0 = O1, 1 = D1, 2 = O2, 3 = D2. Pair 1 routes 0->1 directly
// (edge 0) or around through 2 (edges 1, 4); pair 2 routes 2->3 directly
// (edge 3) or through 1 (edges 4, 2).
Scenario wheatstone() {
    std::vector<Edge> edges{
        {0, 1, CostFunction::monomial(1)},  // x
        {0, 2, CostFunction::monomial(2)},  // x^2
        {1, 3, named_cost("log1p")},        // log(1+x)
        {2, 3, named_cost("one_plus_sqrt")},// 1 + sqrt(x)
        {2, 1, named_cost("exp")},          // e^x
    };
    std::vector<OdPair> pairs{
        {0, 1, {{0}, {1, 4}}},
        {2, 3, {{3}, {4, 2}}},
    };
    return {"wheatstone", Network(4, std::move(edges), std::move(pairs)), {0.5, 0.5}};
}

Scenario uncoupled() {
    std::vector<Edge> edges{
        {0, 1, CostFunction::constant(1.0)},
        {0, 1, CostFunction::monomial(1)},
        {2, 3, CostFunction::zero()},
    };
    std::vector<OdPair> pairs{
        {0, 1, {{0}, {1}}},
        {2, 3, {{2}}},
    };
    return {"uncoupled", Network(4, std::move(edges), std::move(pairs)), {0.5, 0.5}};
}

// Auxiliary scenario: the classic four-road network whose zero-cost bridge
// drags the equilibrium onto the slow roads.
Scenario braess() {
    std::vector<Edge> edges{
        {0, 1, CostFunction::monomial(1)},   // O -> A, c = x
        {0, 2, CostFunction::constant(1.0)}, // O -> B
        {1, 3, CostFunction::constant(1.0)}, // A -> D
        {2, 3, CostFunction::monomial(1)},   // B -> D, c = x
        {1, 2, CostFunction::zero()},        // bridge A -> B
    };
    std::vector<OdPair> pairs{{0, 3, {{0, 2}, {1, 3}, {0, 4, 3}}}};
    return {"braess", Network(4, std::move(edges), std::move(pairs)), {1.0}};
}

}  // namespace

Scenario builtin_scenario(const std::string& name, const ScenarioParams& params) {
    if (name == "pigou_affine") return pigou_affine();
    if (name == "pigou_monomial") return pigou_monomial(params.d1, params.d2);
    if (name == "oscillating_three_link") return oscillating_three_link(params.d);
    if (name == "wheatstone") return wheatstone();
    if (name == "uncoupled") return uncoupled();
    if (name == "braess") return braess();
    throw ParseError("builtin_scenario: unknown scenario '" + name + "'");
}

std::vector<std::string> builtin_scenario_names() {
    return {"pigou_affine", "pigou_monomial", "oscillating_three_link",
            "wheatstone",   "uncoupled",      "braess"};
}

}  // namespace wardrop
