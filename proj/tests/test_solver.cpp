#include <doctest.h>

#include <cmath>
#include <random>

#include "wardrop/poa.hpp"
#include "wardrop/scenario.hpp"
#include "wardrop/solver.hpp"

using namespace wardrop;

namespace {

double max_path_cost(const Network& net, const SolveResult& r, CostMetric metric) {
    double worst = 0.0;
    for (int i = 0; i < net.num_pairs(); ++i)
        for (const auto& p : net.pair(i).paths) {
            double c = 0.0;
            for (int e : p) c += edge_cost(net, e, r.loads.at(e), metric);
            worst = std::max(worst, c);
        }
    return worst;
}

}  // namespace

TEST_CASE("pigou affine equilibrium and optimum") {
    const Scenario sc = builtin_scenario("pigou_affine");
    const Demand demand({1.0});
    const SolveResult we = solve_wardrop(sc.net, demand);
    CHECK(we.converged);
    CHECK(we.loads.at(0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(we.loads.at(1) == doctest::Approx(1.0));
    CHECK(we.objective == doctest::Approx(1.0));

    const SolveResult so = solve_optimum(sc.net, demand);
    CHECK(so.converged);
    CHECK(so.loads.at(0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(so.loads.at(1) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(so.objective == doctest::Approx(0.75));
}

TEST_CASE("pigou monomial (1,2) closed forms") {
    const Scenario sc = builtin_scenario("pigou_monomial", {.d1 = 1, .d2 = 2});
    const Demand demand({1.0});

    // equilibrium: x2^2 + x2 = 1
    const double x2_eq = (std::sqrt(5.0) - 1.0) / 2.0;
    const SolveResult we = solve_wardrop(sc.net, demand);
    CHECK(we.loads.at(1) == doctest::Approx(x2_eq).epsilon(1e-7));
    CHECK(we.objective == doctest::Approx(1.0 - x2_eq).epsilon(1e-9));

    // optimum: 2 x1 = 3 x2^2 with x1 = 1 - x2
    const double x2_opt = (std::sqrt(7.0) - 1.0) / 3.0;
    const double opt = (1.0 - x2_opt) * (1.0 - x2_opt) + x2_opt * x2_opt * x2_opt;
    const SolveResult so = solve_optimum(sc.net, demand);
    CHECK(so.loads.at(1) == doctest::Approx(x2_opt).epsilon(1e-7));
    CHECK(so.objective == doctest::Approx(opt).epsilon(1e-9));
    CHECK(x2_opt == doctest::Approx(0.548584).epsilon(1e-6));
    // grid/scipy oracles agree on 0.3688697 (the first-order condition value)
    CHECK(opt == doctest::Approx(0.3688697).epsilon(1e-6));
}

TEST_CASE("same-degree monomials split evenly") {
    const Scenario sc = builtin_scenario("pigou_monomial", {.d1 = 1, .d2 = 1});
    const Demand demand({2.0});
    const SolveResult we = solve_wardrop(sc.net, demand);
    CHECK(we.loads.at(0) == doctest::Approx(1.0));
    CHECK(we.loads.at(1) == doctest::Approx(1.0));
    CHECK(we.objective == doctest::Approx(2.0));
    const SolveResult so = solve_optimum(sc.net, demand);
    CHECK(so.objective == doctest::Approx(2.0));
}

TEST_CASE("gap soundness and equilibrium characterization") {
    SolverConfig cfg;
    for (const char* name : {"pigou_affine", "wheatstone", "oscillating_three_link", "braess"}) {
        const Scenario sc = builtin_scenario(name);
        const Demand demand = sc.demand(1.0);
        const SolveResult we = solve_wardrop(sc.net, demand, cfg);
        REQUIRE(we.converged);
        CHECK(we.rel_gap <= cfg.rel_gap_tol);
        CHECK(wardrop_residual(sc.net, demand, we.flow) <=
              10.0 * cfg.rel_gap_tol * max_path_cost(sc.net, we, CostMetric::Latency) + 1e-14);

        const SolveResult so = solve_optimum(sc.net, demand, cfg);
        REQUIRE(so.converged);
        CHECK(wardrop_residual(sc.net, demand, so.flow, CostMetric::Marginal) <=
              10.0 * cfg.rel_gap_tol * max_path_cost(sc.net, so, CostMetric::Marginal) + 1e-14);
    }
}

TEST_CASE("equilibrium cost is unique across initial flows") {
    const Scenario sc = builtin_scenario("wheatstone");
    const Demand demand = sc.demand(1.0);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double reference = solve_wardrop(sc.net, demand).objective;
    for (int trial = 0; trial < 5; ++trial) {
        FlowProfile f;
        f.flows.resize(2);
        for (int i = 0; i < 2; ++i) {
            const double s = u(rng);
            f.flows[i] = {demand.inflow(i) * s, demand.inflow(i) * (1.0 - s)};
        }
        const double eq = solve_wardrop(sc.net, demand, {}, f).objective;
        CHECK(eq == doctest::Approx(reference).epsilon(1e-8));
    }
}

TEST_CASE("equilibrium cost scales as kappa^{d+1} for common-degree monomials") {
    const Network net(2,
                      {{0, 1, CostFunction::monomial(3)}, {0, 1, CostFunction::monomial(3, 2.0)}},
                      {{0, 1, {{0}, {1}}}});
    const double eq1 = solve_wardrop(net, Demand({1.0})).objective;
    for (double kappa : {2.0, 10.0, 0.25}) {
        const double eqk = solve_wardrop(net, Demand({kappa})).objective;
        CHECK(eqk == doctest::Approx(std::pow(kappa, 4.0) * eq1).epsilon(1e-8));
    }
}

TEST_CASE("brute force matches closed forms") {
    const Scenario pigou = builtin_scenario("pigou_affine");
    const SolveResult bf = brute_force_solve(pigou.net, Demand({1.0}), SolveObjective::Social);
    CHECK(bf.objective == doctest::Approx(0.75).epsilon(1e-3));

    const Scenario pm = builtin_scenario("pigou_monomial", {.d1 = 1, .d2 = 2});
    const SolveResult bfe = brute_force_solve(pm.net, Demand({1.0}), SolveObjective::Beckmann);
    CHECK(bfe.loads.at(1) == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-3));
}

TEST_CASE("oscillating equilibrium and optimum never coincide") {
    const Scenario sc = builtin_scenario("oscillating_three_link", {.d = 2});
    const Demand demand({1.0});
    const SolveResult eq = brute_force_solve(sc.net, demand, SolveObjective::Beckmann);
    const SolveResult op = brute_force_solve(sc.net, demand, SolveObjective::Social);
    double dist = 0.0;
    for (int e = 0; e < 3; ++e) dist = std::max(dist, std::abs(eq.loads.at(e) - op.loads.at(e)));
    CHECK(dist > 5e-3);  // distinct minimizers
}

TEST_CASE("frank-wolfe agrees with the brute-force oracle on builtins") {
    for (const char* name : {"pigou_affine", "pigou_monomial", "oscillating_three_link",
                             "wheatstone", "uncoupled", "braess"}) {
        const Scenario sc = builtin_scenario(name);
        if (sc.net.num_paths() > 6) continue;
        for (double M : {0.1, 1.0, 10.0}) {
            const Demand demand = sc.demand(M);
            const double fw_eq = solve_wardrop(sc.net, demand).objective;
            const double bf_eq =
                brute_force_solve(sc.net, demand, SolveObjective::Beckmann, 300).objective;
            if (bf_eq > 1e-12)
                CHECK(std::abs(fw_eq - bf_eq) <= 1e-3 * bf_eq);
            const double fw_opt = solve_optimum(sc.net, demand).objective;
            const double bf_opt =
                brute_force_solve(sc.net, demand, SolveObjective::Social, 300).objective;
            if (bf_opt > 1e-12)
                CHECK(std::abs(fw_opt - bf_opt) <= 1e-3 * bf_opt);
        }
    }
}

TEST_CASE("solver rejections and flags") {
    const Scenario sc = builtin_scenario("pigou_affine");
    CHECK_THROWS_AS(Demand({0.0}), StructuralError);
    SolverConfig tiny;
    tiny.max_iterations = 1;
    tiny.rel_gap_tol = 1e-16;
    const SolveResult r = solve_wardrop(sc.net, Demand({1.0}), tiny);
    CHECK_FALSE(r.converged);  // partial result, flagged

    CHECK_THROWS_AS(brute_force_solve(sc.net, Demand({1.0}), SolveObjective::Social, 10),
                    StructuralError);
    // too many paths for the oracle
    const Network big(2,
                      {{0, 1, CostFunction::monomial(1)},
                       {0, 1, CostFunction::monomial(1)},
                       {0, 1, CostFunction::monomial(1)},
                       {0, 1, CostFunction::monomial(1)},
                       {0, 1, CostFunction::monomial(1)},
                       {0, 1, CostFunction::monomial(1)},
                       {0, 1, CostFunction::monomial(1)}},
                      {{0, 1, {{0}, {1}, {2}, {3}, {4}, {5}, {6}}}});
    CHECK_THROWS_AS(brute_force_solve(big, Demand({1.0}), SolveObjective::Social),
                    StructuralError);
}
