#include <doctest.h>

#include <cmath>
#include <random>

#include "wardrop/network.hpp"
#include "wardrop/scenario.hpp"

using namespace wardrop;

namespace {

Network two_link_parallel() {
    return Network(2,
                   {{0, 1, CostFunction::monomial(1)}, {0, 1, CostFunction::monomial(2)}},
                   {{0, 1, {{0}, {1}}}});
}

}  // namespace

TEST_CASE("edge_loads on disjoint parallel paths") {
    const Network net = two_link_parallel();
    FlowProfile f{{{0.3, 0.7}}};
    const LoadProfile x = edge_loads(net, f);
    CHECK(x.at(0) == 0.3);
    CHECK(x.at(1) == 0.7);
}

TEST_CASE("edge_loads with a single used multi-edge path") {
    const Network net = builtin_scenario("wheatstone").net;
    // all of pair 0's flow on its detour path (edges 1, 4)
    FlowProfile f{{{0.0, 1.0}, {0.0, 0.0}}};
    const LoadProfile x = edge_loads(net, f);
    CHECK(x.at(1) == 1.0);
    CHECK(x.at(4) == 1.0);
    CHECK(x.at(0) == 0.0);
    CHECK(x.at(2) == 0.0);
    CHECK(x.at(3) == 0.0);
}

TEST_CASE("zero flow gives all-zero loads") {
    const Network net = builtin_scenario("wheatstone").net;
    FlowProfile f{{{0.0, 0.0}, {0.0, 0.0}}};
    for (double x : edge_loads(net, f).loads) CHECK(x == 0.0);
}

TEST_CASE("edge_loads validates the flow shape") {
    const Network net = two_link_parallel();
    FlowProfile bad{{{0.3}}};  // missing a path
    CHECK_THROWS_AS(edge_loads(net, bad), StructuralError);
}

TEST_CASE("path_cost on the pigou network") {
    const Network net = builtin_scenario("pigou_affine").net;
    LoadProfile x{{0.5, 0.5}};
    const Path p0{0}, p1{1};
    CHECK(path_cost(net, x, p0) == 1.0);
    CHECK(path_cost(net, x, p1) == 0.5);
}

TEST_CASE("path_cost accepts raw edge sequences") {
    const Network net = builtin_scenario("wheatstone").net;
    LoadProfile x{{1.0, 1.0, 1.0, 1.0, 1.0}};
    // x^2, e^x, log(1+x) at unit loads
    const Path walk{1, 4, 2};
    CHECK(path_cost(net, x, walk) ==
          doctest::Approx(1.0 + std::exp(1.0) + std::log(2.0)).epsilon(1e-15));
    const Path bad{9};
    CHECK_THROWS_AS(path_cost(net, x, bad), StructuralError);
}

TEST_CASE("path cost is zero at zero loads for zero-constant polynomials") {
    const Network net = two_link_parallel();
    LoadProfile x{{0.0, 0.0}};
    CHECK(path_cost(net, x, Path{0}) == 0.0);
    CHECK(path_cost(net, x, Path{1}) == 0.0);
}

TEST_CASE("social cost examples") {
    const Network pigou = builtin_scenario("pigou_affine").net;
    CHECK(social_cost(pigou, LoadProfile{{0.5, 0.5}}) == doctest::Approx(0.75));
    CHECK(social_cost(pigou, LoadProfile{{0.0, 1.0}}) == doctest::Approx(1.0));

    const Network pair(2, {{0, 1, CostFunction::monomial(1)}, {0, 1, CostFunction::monomial(1)}},
                       {{0, 1, {{0}, {1}}}});
    CHECK(social_cost(pair, LoadProfile{{1.0, 1.0}}) == doctest::Approx(2.0));
}

TEST_CASE("beckmann potential on single edges") {
    const Network net(2, {{0, 1, CostFunction::monomial(1)}}, {{0, 1, {{0}}}});
    CHECK(beckmann_potential(net, LoadProfile{{1.0}}) == doctest::Approx(0.5));
}

TEST_CASE("wardrop residual on the pigou network") {
    const Network net = builtin_scenario("pigou_affine").net;
    const Demand demand({1.0});
    // all flow on the constant edge: used path costs 1, empty x-link costs 0
    CHECK(wardrop_residual(net, demand, FlowProfile{{{1.0, 0.0}}}) == doctest::Approx(1.0));
    // all flow on the x edge: both paths cost 1
    CHECK(wardrop_residual(net, demand, FlowProfile{{{0.0, 1.0}}}) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("feasibility closure under random flows") {
    const Network net = builtin_scenario("wheatstone").net;
    const Demand demand({0.6, 0.4});
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        FlowProfile f;
        f.flows.resize(2);
        for (int i = 0; i < 2; ++i) {
            const double split = u(rng);
            f.flows[i] = {demand.inflow(i) * split, demand.inflow(i) * (1.0 - split)};
        }
        check_feasible(net, demand, f);
        double total_load = 0.0;
        for (double x : edge_loads(net, f).loads) total_load += x;
        CHECK(total_load <= net.max_path_length() * demand.total() + 1e-12);
    }
}

TEST_CASE("network construction validates structure") {
    // path does not chain head-to-tail
    CHECK_THROWS_AS(Network(3, {{0, 1, CostFunction::monomial(1)}, {0, 2, CostFunction::zero()}},
                            {{0, 2, {{0, 1}}}}),
                    StructuralError);
    // path set empty
    CHECK_THROWS_AS(Network(2, {{0, 1, CostFunction::monomial(1)}}, {{0, 1, {}}}),
                    StructuralError);
    // duplicate path across pairs
    CHECK_THROWS_AS(Network(2, {{0, 1, CostFunction::monomial(1)}},
                            {{0, 1, {{0}}}, {0, 1, {{0}}}}),
                    StructuralError);
    // edge index out of range inside a path
    CHECK_THROWS_AS(Network(2, {{0, 1, CostFunction::monomial(1)}}, {{0, 1, {{3}}}}),
                    StructuralError);
}

TEST_CASE("demand invariants") {
    CHECK_THROWS_AS(Demand({0.0, 0.0}), StructuralError);
    CHECK_THROWS_AS(Demand({-1.0, 2.0}), StructuralError);
    const Demand d({1.0, 3.0});
    CHECK(d.total() == 4.0);
    CHECK(d.rate(0) == doctest::Approx(0.25));
    CHECK(d.rate(1) == doctest::Approx(0.75));
}
