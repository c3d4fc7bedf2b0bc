#include "wardrop/json_io.hpp"

#include <cmath>

#include "wardrop/scenario.hpp"

namespace wardrop {

namespace {

constexpr const char* kSchema = "wardrop-network/1";

json cost_to_json(const CostFunction& c) {
    json j;
    switch (c.kind()) {
        case CostKind::Polynomial: {
            j["type"] = "polynomial";
            json terms = json::array();
            for (const auto& [k, v] : c.poly_terms()) terms.push_back({int(k), v});
            j["terms"] = terms;
            break;
        }
        case CostKind::Bpr:
            j["type"] = "bpr";
            j["fft"] = c.bpr_fft();
            j["b"] = c.bpr_b();
            j["capacity"] = c.bpr_capacity();
            j["power"] = c.bpr_power();
            break;
        case CostKind::Oscillating:
            j["type"] = "oscillating";
            j["degree"] = c.osc_degree();
            j["phase"] = c.phase() == OscPhase::Sine     ? "sine"
                         : c.phase() == OscPhase::Cosine ? "cosine"
                                                         : "none";
            break;
        case CostKind::Generic:
            if (c.name().empty())
                throw StructuralError("network_to_json: unnamed generic cost cannot serialize");
            j["type"] = "named";
            j["name"] = c.name();
            break;
    }
    return j;
}

CostFunction cost_from_json(const json& j) {
    if (!j.contains("type")) throw ParseError("network json: cost without type tag");
    const std::string type = j.at("type").get<std::string>();
    if (type == "polynomial") {
        std::vector<std::pair<int, double>> terms;
        for (const auto& t : j.at("terms"))
            terms.emplace_back(t.at(0).get<int>(), t.at(1).get<double>());
        return CostFunction::polynomial(std::move(terms));
    }
    if (type == "bpr")
        return CostFunction::bpr(j.at("fft").get<double>(), j.at("b").get<double>(),
                                 j.at("capacity").get<double>(), j.at("power").get<double>());
    if (type == "oscillating") {
        const std::string phase = j.at("phase").get<std::string>();
        OscPhase p;
        if (phase == "sine") p = OscPhase::Sine;
        else if (phase == "cosine") p = OscPhase::Cosine;
        else if (phase == "none") p = OscPhase::None;
        else throw ParseError("network json: unknown oscillating phase '" + phase + "'");
        return CostFunction::oscillating(j.at("degree").get<int>(), p);
    }
    if (type == "named") {
        try {
            return named_cost(j.at("name").get<std::string>());
        } catch (const ParseError& e) {
            throw ParseError(std::string("network json: ") + e.what());
        }
    }
    throw ParseError("network json: unknown cost variant tag '" + type + "'");
}

json ext_to_json(const ExtReal& v) {
    if (v.is_inf()) return "inf";
    if (v.is_undef()) return "undefined";
    return v.value();
}

json degree_to_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

}  // namespace

json network_to_json(const Network& net, const std::optional<std::vector<double>>& inflows) {
    if (inflows && int(inflows->size()) != net.num_pairs())
        throw StructuralError("network_to_json: inflow vector size mismatch");
    json doc;
    doc["schema"] = kSchema;
    doc["vertices"] = net.num_vertices();
    json edges = json::array();
    for (const auto& e : net.edges())
        edges.push_back({{"tail", e.tail}, {"head", e.head}, {"cost", cost_to_json(e.cost)}});
    doc["edges"] = edges;
    json pairs = json::array();
    for (int i = 0; i < net.num_pairs(); ++i) {
        const auto& pr = net.pair(i);
        json pj{{"origin", pr.origin}, {"dest", pr.dest}, {"paths", pr.paths}};
        if (inflows) pj["inflow"] = (*inflows)[i];
        pairs.push_back(pj);
    }
    doc["pairs"] = pairs;
    return doc;
}

NetworkDocument network_from_json(const json& doc) {
    if (!doc.contains("schema") || doc.at("schema").get<std::string>() != kSchema)
        throw ParseError("network json: missing or unsupported schema version");
    if (!doc.contains("vertices") || !doc.contains("edges") || !doc.contains("pairs"))
        throw ParseError("network json: missing vertices/edges/pairs");
    std::vector<Edge> edges;
    for (const auto& ej : doc.at("edges"))
        edges.push_back(
            {ej.at("tail").get<int>(), ej.at("head").get<int>(), cost_from_json(ej.at("cost"))});
    std::vector<OdPair> pairs;
    std::vector<double> inflows;
    bool any_inflow = false;
    for (const auto& pj : doc.at("pairs")) {
        OdPair pr;
        pr.origin = pj.at("origin").get<int>();
        pr.dest = pj.at("dest").get<int>();
        if (!pj.contains("paths"))
            throw ParseError("network json: pair without a path set");
        for (const auto& pathj : pj.at("paths")) pr.paths.push_back(pathj.get<Path>());
        pairs.push_back(std::move(pr));
        if (pj.contains("inflow")) {
            any_inflow = true;
            inflows.push_back(pj.at("inflow").get<double>());
        } else {
            inflows.push_back(0.0);
        }
    }
    NetworkDocument nd{Network(doc.at("vertices").get<int>(), std::move(edges), std::move(pairs)),
                       std::nullopt};
    if (any_inflow) nd.inflows = std::move(inflows);
    return nd;
}

json solve_result_to_json(const SolveResult& r) {
    json j;
    j["objective"] = r.objective;
    j["rel_gap"] = r.rel_gap;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    if (r.convexity_warning) j["convexity_warning"] = true;
    j["loads"] = r.loads.loads;
    j["flows"] = r.flow.flows;
    return j;
}

json classification_to_json(const ClassificationReport& rep) {
    json j;
    j["limit"] = limit_name(rep.limit);
    j["benchmark"] = rep.benchmark.describe();
    json edges = json::array();
    for (size_t e = 0; e < rep.edge_indices.size(); ++e)
        edges.push_back({{"edge", int(e)},
                         {"index", ext_to_json(rep.edge_indices[e])},
                         {"class", class_name(rep.edge_classes[e])}});
    j["edges"] = edges;
    json pairs = json::array();
    for (size_t i = 0; i < rep.pair_indices.size(); ++i) {
        json paths = json::array();
        for (size_t p = 0; p < rep.path_indices[i].size(); ++p)
            paths.push_back({{"index", ext_to_json(rep.path_indices[i][p])},
                             {"class", class_name(rep.path_classes[i][p])}});
        pairs.push_back({{"pair", int(i)},
                         {"index", ext_to_json(rep.pair_indices[i])},
                         {"class", class_name(rep.pair_classes[i])},
                         {"paths", paths}});
    }
    j["pairs"] = pairs;
    j["network_index"] = ext_to_json(rep.network_index);
    j["tight"] = rep.tight;
    return j;
}

json poly_orders_to_json(const PolyOrders& po) {
    json j;
    json edges = json::array();
    for (size_t e = 0; e < po.edge_q.size(); ++e)
        edges.push_back({{"edge", int(e)},
                         {"q", degree_to_json(po.edge_q[e])},
                         {"d", degree_to_json(po.edge_d[e])}});
    j["edges"] = edges;
    j["pair_q"] = po.pair_q;
    j["pair_d"] = po.pair_d;
    j["network_q"] = degree_to_json(po.net_q);
    j["network_d"] = degree_to_json(po.net_d);
    j["slow_light"] = po.slow_light;
    j["slow_heavy"] = po.slow_heavy;
    j["gap_light"] = degree_to_json(po.gap_light);
    j["gap_heavy"] = degree_to_json(po.gap_heavy);
    return j;
}

json rate_estimate_to_json(const RateEstimate& re) {
    json j;
    j["exponent"] = degree_to_json(re.exponent);
    if (re.constant) j["constant"] = *re.constant;
    switch (re.provenance) {
        case RateEstimate::Provenance::TheoremExponent: j["provenance"] = "theorem-exponent"; break;
        case RateEstimate::Provenance::PigouClosedForm: j["provenance"] = "pigou-closed-form"; break;
        case RateEstimate::Provenance::EmpiricalFit: j["provenance"] = "empirical-fit"; break;
    }
    if (re.slow_set_empty) j["slow_set_empty"] = true;
    return j;
}

json rate_bound_to_json(const RateBound& rb) {
    return json{{"K1", rb.K1},
                {"Ka", rb.Ka},
                {"exponent", rb.exponent},
                {"M0", degree_to_json(rb.M0)},
                {"G", rb.G},
                {"B", rb.B},
                {"c0", rb.c0},
                {"D", rb.D},
                {"H", rb.H},
                {"Hbar", rb.Hbar},
                {"kappa", rb.kappa},
                {"eps", rb.eps}};
}

json limit_value_to_json(const LimitValue& lv) {
    return json{{"rho", lv.rho},
                {"beta", lv.beta},
                {"value", lv.value},
                {"benchmark", lv.benchmark.describe()},
                {"allocation", lv.allocation},
                {"zeta", lv.zeta}};
}

json sweep_to_json(const SweepResult& sw) {
    json rows = json::array();
    for (const auto& r : sw.rows) {
        json row{{sw.scale_label, r.scale}, {"eq_cost", r.eq},   {"opt_cost", r.opt},
                 {"poa", r.poa},            {"eq_gap", r.eq_gap}, {"opt_gap", r.opt_gap},
                 {"converged", r.converged}};
        if (r.failed) row["failed"] = true;
        rows.push_back(row);
    }
    return json{{"rows", rows},
                {"metadata",
                 {{"rel_gap_tol", sw.config.rel_gap_tol},
                  {"max_iterations", sw.config.max_iterations},
                  {"scale", sw.scale_label}}}};
}

json salience_to_json(const SalienceReport& rep) {
    return json{{"subset", rep.subset},
                {"horizon", rep.horizon},
                {"tail_min", rep.tail_min},
                {"salient", rep.salient},
                {"threshold", rep.threshold},
                {"finite_horizon_approximation", rep.finite_horizon_approximation}};
}

}  // namespace wardrop
