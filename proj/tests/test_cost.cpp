#include <doctest.h>

#include <cmath>

#include "wardrop/cost.hpp"
#include "wardrop/scenario.hpp"

using namespace wardrop;

namespace {

// Central difference with a relative step, for derivative cross-checks.
double num_deriv(const CostFunction& f, double x) {
    const double h = std::max(1e-7, 1e-7 * x);
    return (f.primitive(x + h) - f.primitive(std::max(0.0, x - h))) /
           (x + h - std::max(0.0, x - h));
}

const double kLogGrid[] = {1e-6, 1e-3, 0.1, 0.5, 1.0, 2.0, 10.0, 1e3, 1e6};

}  // namespace

TEST_CASE("polynomial evaluation, derivative, primitive") {
    const auto c = CostFunction::polynomial({{0, 2.0}, {4, 3.0}});  // 2 + 3x^4
    CHECK(c(0.0) == 2.0);
    CHECK(c(2.0) == doctest::Approx(2.0 + 48.0));
    CHECK(c.derivative(2.0) == doctest::Approx(12.0 * 8.0));
    // a L + b L^5 / 5
    CHECK(c.primitive(2.0) == doctest::Approx(2.0 * 2.0 + 3.0 * 32.0 / 5.0));
    CHECK(c.marginal(2.0) == doctest::Approx(2.0 + 5.0 * 3.0 * 16.0));
}

TEST_CASE("polynomial constructor rejects bad terms") {
    CHECK_THROWS_AS(CostFunction::polynomial({{2, -1.0}}), StructuralError);
    CHECK_THROWS_AS(CostFunction::polynomial({{-1, 1.0}}), StructuralError);
    CHECK_THROWS_AS(CostFunction::bpr(1.0, 0.15, 0.0, 4.0), StructuralError);
    CHECK_THROWS_AS(CostFunction::oscillating(0, OscPhase::Sine), StructuralError);
}

TEST_CASE("bpr closed forms") {
    const auto c = CostFunction::bpr(6.0, 0.15, 25900.2, 4.0);
    CHECK(c(0.0) == doctest::Approx(6.0));
    // at capacity, exactly fft (1 + b)
    CHECK(c(25900.2) == doctest::Approx(6.0 * 1.15).epsilon(1e-15));
    CHECK(num_deriv(c, 3000.0) == doctest::Approx(c(3000.0)).epsilon(1e-6));
}

TEST_CASE("monomial marginal is (d+1) x^d") {
    for (int d : {1, 2, 3, 5}) {
        const auto c = CostFunction::monomial(d);
        CHECK(c.marginal(1.7) == doctest::Approx((d + 1) * std::pow(1.7, d)));
    }
}

TEST_CASE("oscillating cost matches its closed-form primitive") {
    const auto c = CostFunction::oscillating(2, OscPhase::Sine);
    CHECK(c(0.0) == 0.0);  // continuity convention at 0

    for (double x : {0.3, 1.0, 2.5, 20.0}) {
        const double expect =
            x * x * x / 3.0 + x * x * x * (3.0 * std::sin(std::log(x)) - std::cos(std::log(x))) / 20.0;
        CHECK(c.primitive(x) == doctest::Approx(expect).epsilon(1e-12));
        // independent oracle: quadrature of the evaluator
        const double quad = adaptive_quadrature([&](double t) { return c(t); }, 0.0, x, 1e-12);
        CHECK(c.primitive(x) == doctest::Approx(quad).epsilon(1e-9));
    }

    // marginal, sine phase, d=2: x^2 [3 + 3/2 sin(log x) + 1/2 cos(log x)]
    for (double x : {0.7, 3.0}) {
        const double lg = std::log(x);
        CHECK(c.marginal(x) ==
              doctest::Approx(x * x * (3.0 + 1.5 * std::sin(lg) + 0.5 * std::cos(lg))));
    }
}

TEST_CASE("primitive differentiates back to the cost on a log grid") {
    const CostFunction variants[] = {
        CostFunction::polynomial({{1, 1.0}}),
        CostFunction::polynomial({{0, 1.0}, {2, 0.5}, {5, 2.0}}),
        CostFunction::bpr(6.0, 0.15, 100.0, 4.0),
        CostFunction::oscillating(2, OscPhase::Sine),
        CostFunction::oscillating(3, OscPhase::Cosine),
        named_cost("log1p"),
        named_cost("one_plus_sqrt"),
    };
    for (const auto& c : variants)
        for (double x : kLogGrid) {
            if (x > 100.0 && c.kind() == CostKind::Generic) continue;  // quadrature cost
            const double expect = c(x);
            const double got = num_deriv(c, x);
            CHECK(got == doctest::Approx(expect).epsilon(1e-5));
        }
}

TEST_CASE("marginal matches central differences of x c(x)") {
    const CostFunction variants[] = {
        CostFunction::polynomial({{0, 2.0}, {3, 1.0}}),
        CostFunction::bpr(1.0, 1.0, 1.0, 4.0),
        CostFunction::oscillating(2, OscPhase::Cosine),
    };
    for (const auto& c : variants)
        for (double x : {0.25, 1.0, 7.0}) {
            const double h = 1e-6 * std::max(1.0, x);
            const double num =
                ((x + h) * c(x + h) - (x - h) * c(x - h)) / (2.0 * h);
            CHECK(c.marginal(x) == doctest::Approx(num).epsilon(1e-6));
        }
}

TEST_CASE("all shipped variants are nondecreasing on sampled grids") {
    const CostFunction variants[] = {
        CostFunction::constant(3.0),
        CostFunction::polynomial({{1, 0.5}, {4, 2.0}}),
        CostFunction::bpr(2.0, 0.15, 10.0, 4.0),
        CostFunction::oscillating(2, OscPhase::Sine),
        CostFunction::oscillating(2, OscPhase::Cosine),
        named_cost("log1p"),
        named_cost("one_plus_sqrt"),
        named_cost("exp"),
    };
    for (const auto& c : variants) {
        double prev = c(0.0);
        for (double x = 0.05; x < 40.0; x *= 1.37) {
            const double v = c(x);
            CHECK(v >= prev - 1e-12 * std::max(1.0, std::abs(prev)));
            prev = v;
        }
    }
}

TEST_CASE("generic primitive uses quadrature") {
    CHECK(named_cost("exp").primitive(1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-10));
    // int_0^x log(1+t) dt = (1+x) log(1+x) - x
    const double x = 3.0;
    CHECK(named_cost("log1p").primitive(x) ==
          doctest::Approx((1.0 + x) * std::log1p(x) - x).epsilon(1e-10));
}

TEST_CASE("zero cost conventions") {
    const auto z = CostFunction::zero();
    CHECK(z.is_zero());
    CHECK(z(5.0) == 0.0);
    CHECK(z.min_degree() == std::numeric_limits<double>::infinity());
    CHECK(z.max_degree() == 0.0);
}
