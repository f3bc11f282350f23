#include <doctest.h>

#include <cmath>
#include <random>

#include "patchkpp/grid.hpp"
#include "patchkpp/landscape.hpp"

using namespace patchkpp;

TEST_CASE("derived movement parameters") {
    // symmetric case collapses to continuous density and flux
    Landscape a = build_landscape(1, 1, 1, 1, 0.5);
    CHECK(a.k == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.sigma == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.period == 2.0);

    Landscape b = build_landscape(1, 1, 1, 2, 0.5);
    CHECK(b.k == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(b.sigma == doctest::Approx(1.0).epsilon(1e-15));

    // k = alpha/(1-alpha) * d2/d1 = 0.25 * 4 = 1, sigma = (1-alpha)/alpha = 4
    Landscape c = build_landscape(2, 1, 1, 4, 0.2);
    CHECK(c.k == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.sigma == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(c.k * c.d1 * c.sigma == doctest::Approx(c.d2).epsilon(1e-14));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(build_landscape(0, 1, 1, 1, 0.5), NonPositiveParameter);
    CHECK_THROWS_AS(build_landscape(1, -1, 1, 1, 0.5), NonPositiveParameter);
    CHECK_THROWS_AS(build_landscape(1, 1, 1, 1, 0.0), AlphaOutOfRange);
    CHECK_THROWS_AS(build_landscape(1, 1, 1, 1, 1.0), AlphaOutOfRange);
    CHECK_THROWS_AS(build_landscape_sigma(1, 1, 1, 1, -2.0), NonPositiveParameter);
}

TEST_CASE("sigma constructor inverts alpha and preserves the identity") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> U(0.05, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double l1 = U(rng) * 4, l2 = U(rng) * 4, d1 = U(rng) * 3, d2 = U(rng) * 3;
        const double alpha = 0.02 + 0.96 * U(rng);
        Landscape ls = build_landscape(l1, l2, d1, d2, alpha);
        CHECK(std::fabs(ls.sigma * ls.k * ls.d1 - ls.d2) <= 1e-14 * ls.d2);
        CHECK(ls.sigma == doctest::Approx((1 - alpha) / alpha).epsilon(1e-13));
        Landscape back = build_landscape_sigma(l1, l2, d1, d2, ls.sigma);
        CHECK(back.alpha == doctest::Approx(alpha).epsilon(1e-12));
    }
    // sigma = 1 iff alpha = 1/2
    CHECK(build_landscape_sigma(1, 2, 1, 3, 1.0).alpha == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("logistic reaction caps and linearizations") {
    Reaction r = Reaction::logistic(1.0, -1.0);
    CHECK(r.f1_prime0() == 1.0);
    CHECK(r.f2_prime0() == -1.0);
    CHECK(r.K1() == 1.0);
    CHECK(r.K2() == 1.0); // any positive cap works for mu2 <= 0
    CHECK(r.f(1, 0.0) == 0.0);
    CHECK(r.f(2, 0.0) == 0.0);
    CHECK(r.fprime(1, 0.25) == doctest::Approx(0.5));
    CHECK_THROWS(Reaction::logistic(0.5, 1.0)); // favorability convention
}

TEST_CASE("hypothesis report") {
    CHECK(validate_hypotheses(Reaction::logistic(1.0, -1.0)).kpp_holds);
    CHECK(validate_hypotheses(Reaction::logistic(1.0, -1.0)).cap_bound_holds);
    CHECK(validate_hypotheses(Reaction::logistic(1.0, 0.5)).kpp_holds);

    // linear growth: f(s)/s constant (non-increasing, never strict), no real cap
    Reaction lin = Reaction::tabulated([](double s) { return s; },
                                       [](double s) { return s * (1 - s); }, 1.0, 1.0, 1.0, 1.0);
    HypothesisReport rep = validate_hypotheses(lin);
    CHECK_FALSE(rep.cap_bound_holds);
    CHECK(rep.kpp_nonincreasing[0]);

    // bistable-type term: accepted at construction, flagged by the report
    Reaction bistable = Reaction::tabulated(
        [](double s) { return s * (s - 0.3) * (1 - s); },
        [](double s) { return s * (s - 0.3) * (1 - s); }, -0.3, -0.3, 1.0, 1.0);
    HypothesisReport brep = validate_hypotheses(bistable);
    CHECK(brep.cap_bound_holds);
    CHECK_FALSE(brep.kpp_holds);
}

TEST_CASE("interface set alternates with the tile pattern") {
    Landscape ls = build_landscape(2, 1, 1, 1, 0.5);
    auto pts = interface_set(ls, 2);
    REQUIRE(pts.size() >= 4);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        CHECK(pts[i].x > pts[i - 1].x);
        CHECK(pts[i].kind != pts[i - 1].kind);
        const double gap = pts[i].x - pts[i - 1].x;
        const double expect = pts[i].kind == InterfaceKind::S1 ? ls.l1 : ls.l2;
        CHECK(gap == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("rescaling between physical and continuous densities") {
    Landscape ls = build_landscape(1, 1, 1, 2, 0.5); // k = 2
    auto grid = build_grid(ls, 2, 6);

    SUBCASE("k=1 is the identity") {
        Landscape id = build_landscape(1, 1, 1, 1, 0.5);
        auto g1 = build_grid(id, 2, 6);
        Field u = sample_field(g1, [](double x) { return 0.3 + 0.1 * std::sin(x); });
        PhysicalField v = rescale_continuous_to_physical(u, id);
        for (int i = 0; i < g1->n(); ++i) CHECK(v.values[i] == u.values[i]);
        Field u2 = rescale_physical_to_continuous(v, id);
        for (int i = 0; i < g1->n(); ++i) CHECK(u2.values[i] == u.values[i]);
    }

    SUBCASE("constant v = 1 on a type-2 patch carries u = 2 there") {
        Field u = sample_field(grid, [](double) { return 2.0; });
        PhysicalField v = rescale_continuous_to_physical(u, ls);
        for (int i = 0; i < grid->n(); ++i) {
            if (grid->kind[i] == NodeKind::Interior && grid->patch_of_node[i] == 2)
                CHECK(v.values[i] == doctest::Approx(1.0));
        }
    }

    SUBCASE("round-trip u -> v -> u is the identity to machine precision") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> U(0.1, 1.0);
        for (int trial = 0; trial < 10; ++trial) {
            const double a = U(rng), w = U(rng) * 3;
            Field u = sample_field(
                grid, [&](double x) { return a * std::exp(-x * x / (1 + w)) + 0.05; });
            Field u2 = rescale_physical_to_continuous(rescale_continuous_to_physical(u, ls), ls);
            for (int i = 0; i < grid->n(); ++i)
                CHECK(u2.values[i] == doctest::Approx(u.values[i]).epsilon(1e-15));
        }
    }

    SUBCASE("mismatched interface limits are rejected") {
        Field u = sample_field(grid, [](double) { return 1.0; });
        PhysicalField v = rescale_continuous_to_physical(u, ls);
        v.interface_right[0] *= 1.5;
        CHECK_THROWS_AS(rescale_physical_to_continuous(v, ls), InconsistentInterfaceValues);
    }
}
