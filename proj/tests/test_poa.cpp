#include <doctest.h>

#include <cmath>

#include "wardrop/poa.hpp"
#include "wardrop/scenario.hpp"

using namespace wardrop;

TEST_CASE("price of anarchy examples") {
    const Scenario pigou = builtin_scenario("pigou_affine");
    CHECK(price_of_anarchy(pigou.net, {1.0}) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));

    const Scenario pm = builtin_scenario("pigou_monomial", {.d1 = 1, .d2 = 2});
    const double x2_eq = (std::sqrt(5.0) - 1.0) / 2.0;
    const double x2_opt = (std::sqrt(7.0) - 1.0) / 3.0;
    const double expected =
        (1.0 - x2_eq) / ((1.0 - x2_opt) * (1.0 - x2_opt) + x2_opt * x2_opt * x2_opt);
    CHECK(price_of_anarchy(pm.net, {1.0}) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(expected == doctest::Approx(1.0355039).epsilon(1e-6));

    // all-zero costs: the vacuous convention
    const Network zero(2, {{0, 1, CostFunction::zero()}}, {{0, 1, {{0}}}});
    CHECK(price_of_anarchy(zero, {1.0}) == 1.0);
    // zero total inflow
    CHECK(price_of_anarchy(pigou.net, {0.0}) == 1.0);
}

TEST_CASE("sweep rises to an interior maximum and decays") {
    const Scenario sc = builtin_scenario("pigou_monomial", {.d1 = 1, .d2 = 2});
    const SweepResult sw = sweep(sc.net, sc.rates, {1e-3, 1e6, 40});
    REQUIRE(sw.rows.size() == 40);
    size_t argmax = 0;
    for (size_t k = 0; k < sw.rows.size(); ++k)
        if (sw.rows[k].poa > sw.rows[argmax].poa) argmax = k;
    CHECK(argmax > 0);
    CHECK(argmax < sw.rows.size() - 1);
    CHECK(sw.rows[argmax].poa > 1.01);
    CHECK(sw.rows.front().poa == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(sw.rows.back().poa == doctest::Approx(1.0).epsilon(1e-3));

    // spot-check five rows against the brute-force oracle
    for (size_t k : {0ul, 10ul, 20ul, 30ul, 39ul}) {
        const double M = sw.rows[k].scale;
        const double eq =
            brute_force_solve(sc.net, Demand({M}), SolveObjective::Beckmann, 400).objective;
        const double opt =
            brute_force_solve(sc.net, Demand({M}), SolveObjective::Social, 400).objective;
        if (opt > 1e-12) CHECK(sw.rows[k].poa == doctest::Approx(eq / opt).epsilon(2e-3));
    }
}

TEST_CASE("same-degree monomial sweeps sit at one") {
    const Scenario sc = builtin_scenario("pigou_monomial", {.d1 = 3, .d2 = 3});
    const SweepResult sw = sweep(sc.net, sc.rates, {1e-3, 1e3, 20});
    for (const auto& row : sw.rows) CHECK(std::abs(row.poa - 1.0) <= 1e-8);
}

TEST_CASE("oscillating network stays strictly inefficient") {
    const Scenario sc = builtin_scenario("oscillating_three_link", {.d = 2});
    const SweepResult sw = sweep(sc.net, sc.rates, {1.0, std::exp(2.0 * M_PI), 60});
    double min_poa = 2.0;
    for (const auto& row : sw.rows) min_poa = std::min(min_poa, row.poa);
    CHECK(min_poa > 1.0 + 1e-4);
}

TEST_CASE("sweep output is deterministic and schedule-independent") {
    const Scenario sc = builtin_scenario("wheatstone");
    const SweepResult a = sweep(sc.net, sc.rates, {0.1, 10.0, 8});
    const SweepResult b = sweep(sc.net, sc.rates, {0.1, 10.0, 8});
    const SweepResult c = sweep(sc.net, sc.rates, {0.1, 10.0, 8}, {}, 4);
    CHECK(a.to_csv() == b.to_csv());
    CHECK(a.to_csv() == c.to_csv());
    CHECK(a.to_csv().rfind("M,eq_cost,opt_cost,poa,eq_gap,opt_gap\n", 0) == 0);
}

TEST_CASE("sweep rows satisfy the poa and ordering invariants") {
    const Scenario sc = builtin_scenario("braess");
    const SweepResult sw = sweep(sc.net, sc.rates, {1e-2, 1e2, 12});
    for (const auto& row : sw.rows) {
        CHECK(row.poa >= 1.0 - 10.0 * (row.eq_gap + row.opt_gap));
        CHECK(row.opt <= row.eq + 1e-12 * std::max(1.0, row.eq));
    }
}

TEST_CASE("power-law fit recovers an exact synthetic law") {
    SweepResult sw;
    for (int k = 0; k < 12; ++k) {
        SweepRow row;
        row.scale = std::pow(10.0, -6.0 + k * 0.25);
        row.poa = 1.0 + 0.25 * row.scale;
        row.eq_gap = row.opt_gap = 0.0;
        sw.rows.push_back(row);
    }
    const RateEstimate re = fit_power_law(sw, TrafficLimit::Light, 3.0);
    CHECK(re.exponent == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*re.constant == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("fitted tails match the pigou constants") {
    const Scenario sc = builtin_scenario("pigou_monomial", {.d1 = 1, .d2 = 2});

    const SweepResult hs = sweep(sc.net, sc.rates, {1e4, 1e8, 25});
    const RateEstimate h = fit_power_law(hs, TrafficLimit::Heavy);
    CHECK(std::abs(h.exponent - 0.5) <= 0.05 * 0.5);
    const double b_heavy = 2.0 * std::pow(2.0 / 3.0, 1.5) - 1.0;
    CHECK(std::abs(*h.constant - b_heavy) <= 0.02 * b_heavy);

    const SweepResult ls = sweep(sc.net, sc.rates, {1e-6, 1e-3, 25});
    const RateEstimate l = fit_power_law(ls, TrafficLimit::Light);
    CHECK(std::abs(l.exponent - 1.0) <= 0.05);
    CHECK(std::abs(*l.constant - 0.25) <= 0.02 * 0.25);
}

TEST_CASE("fit degenerates cleanly when PoA is identically one") {
    const Scenario sc = builtin_scenario("pigou_monomial", {.d1 = 2, .d2 = 2});
    const SweepResult sw = sweep(sc.net, sc.rates, {1e2, 1e6, 10});
    const RateEstimate re = fit_power_law(sw, TrafficLimit::Heavy);
    CHECK_FALSE(re.constant.has_value());
    CHECK(re.exponent == 0.0);
}

TEST_CASE("fitted exponent never beats the theorem exponent by much") {
    for (auto [d1, d2] : {std::pair{1, 2}, {2, 4}}) {
        const Scenario sc = builtin_scenario("pigou_monomial", {.d1 = d1, .d2 = d2});
        const double theorem = rate_exponent(sc.net, TrafficLimit::Heavy).exponent;
        const SweepResult sw = sweep(sc.net, sc.rates, {1e4, 1e8, 20});
        const RateEstimate fit = fit_power_law(sw, TrafficLimit::Heavy);
        CHECK(fit.exponent <= 1.1 * theorem);
    }
}

TEST_CASE("salience of alternating inflows") {
    DemandSequence seq;
    seq.rules.push_back(SequenceRule::periodic(0.0, 0.0, 1.0, 0.0));  // (1+(-1)^n)/2
    seq.rules.push_back(SequenceRule::periodic(1.0, 0.0, 0.0, 0.0));  // (1-(-1)^n)/2
    const SalienceReport plus = salience_check(seq, {0}, 100);
    CHECK(plus.tail_min == doctest::Approx(0.0));
    CHECK_FALSE(plus.salient);
    const SalienceReport both = salience_check(seq, {0, 1}, 100);
    CHECK(both.tail_min == doctest::Approx(1.0));
    CHECK(both.salient);
}

TEST_CASE("salience of the sqrt(n) / n sequence") {
    DemandSequence seq;
    seq.rules.push_back(SequenceRule::power_rule(1.0, 0.5));
    seq.rules.push_back(SequenceRule::power_rule(1.0, 1.0));
    const SalienceReport first = salience_check(seq, {0}, 10000);
    CHECK(first.tail_min < 0.02);
    CHECK(first.tail_min > 0.0);
    CHECK(first.salient);  // still above the 1e-6 floor at this finite horizon
    CHECK(salience_check(seq, {0, 1}, 10000).salient);

    // constant rates: any nonempty subset is salient
    DemandSequence cseq;
    cseq.rules.push_back(SequenceRule::share_of_n(0.5));
    cseq.rules.push_back(SequenceRule::share_of_n(0.5));
    CHECK(salience_check(cseq, {0}, 50).salient);
    CHECK(salience_check(cseq, {1}, 50).salient);
}

TEST_CASE("sequence poa on the uncoupled network") {
    const Scenario sc = builtin_scenario("uncoupled");
    DemandSequence inefficient;
    inefficient.rules.push_back(SequenceRule::periodic(1.0, 0.0, 1.0, 2.0));
    inefficient.rules.push_back(SequenceRule::periodic(0.0, 2.0, 0.0, 0.0));

    const SweepResult sw = sequence_poa(sc.net, inefficient, 12);
    REQUIRE(sw.rows.size() == 12);
    for (int n : {5, 9, 11})
        CHECK(sw.rows[n - 1].poa == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
    // even n: a one-pair Pigou game at M = 1 + 2n, whose PoA is M / (M - 1/4)
    for (int n : {4, 8, 12}) {
        const double M = 1.0 + 2.0 * n;
        CHECK(sw.rows[n - 1].poa == doctest::Approx(M / (M - 0.25)).epsilon(1e-6));
    }

    DemandSequence efficient;
    efficient.rules.push_back(SequenceRule::power_rule(1.0, 0.5));
    efficient.rules.push_back(SequenceRule::power_rule(1.0, 1.0));
    // at n = 400 the pigou pair carries sqrt(400) = 20 units: PoA = M/(M - 1/4)
    const SweepResult es = sequence_poa(sc.net, efficient, 400);
    CHECK(es.rows[399].poa == doctest::Approx(20.0 / 19.75).epsilon(1e-6));
}

TEST_CASE("lock-in threshold for a common-degree BPR net") {
    const Network net(2,
                      {{0, 1, CostFunction::bpr(1.0, 1.0, 1.0, 4.0)},
                       {0, 1, CostFunction::bpr(2.0, 0.5, 1.0, 4.0)},
                       {0, 1, CostFunction::bpr(4.0, 0.25, 1.0, 4.0)}},
                      {{0, 1, {{0}, {1}, {2}}}});
    // marginal cost of the cheapest edge reaches the next zero-load cost
    // first: 1 + 5 M^4 = 2  =>  M = (1/5)^(1/4)
    const double threshold = lock_in_threshold(net);
    CHECK(threshold == doctest::Approx(std::pow(0.2, 0.25)).epsilon(1e-9));

    for (double M : {0.1, 0.5, threshold * 0.999})
        CHECK(price_of_anarchy(net, {M}) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(price_of_anarchy(net, {2.0}) > 1.0 + 1e-4);
}

TEST_CASE("sequence rules validate") {
    DemandSequence seq;
    seq.rules.push_back(SequenceRule::constant(0.0));
    CHECK_THROWS_AS(seq.rates(3), StructuralError);  // zero total
    CHECK_THROWS_AS(salience_check(seq, {0}, 5), StructuralError);  // horizon too small
}
