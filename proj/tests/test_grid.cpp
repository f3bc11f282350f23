#include <doctest.h>

#include <cmath>

#include "patchkpp/grid.hpp"
#include "patchkpp/pde.hpp"

using namespace patchkpp;

TEST_CASE("truncated grid geometry") {
    Landscape ls = build_landscape(1, 1, 1, 1, 0.5);
    auto g = build_grid(ls, 1, 4);

    // window [-2,2], 4 patches, interfaces exactly at {-1, 0, 1}
    CHECK(g->x.front() == -2.0);
    CHECK(g->x.back() == 2.0);
    REQUIRE(g->interface_nodes.size() == 3);
    CHECK(g->x[g->interface_nodes[0]] == -1.0);
    CHECK(g->x[g->interface_nodes[1]] == 0.0);
    CHECK(g->x[g->interface_nodes[2]] == 1.0);
    CHECK(g->kind[g->interface_nodes[0]] == NodeKind::InterfaceS2);
    CHECK(g->kind[g->interface_nodes[1]] == NodeKind::InterfaceS1);
    CHECK(g->kind[g->interface_nodes[2]] == NodeKind::InterfaceS2);

    // node count: 4n patches x npp subintervals + 1
    CHECK(g->n() == 4 * 4 + 1);
    CHECK(g->kind.front() == NodeKind::Boundary);
    CHECK(g->kind.back() == NodeKind::Boundary);
}

TEST_CASE("interfaces reproduce S1 = lZ, S2 = lZ + l2 and spacing is uniform") {
    Landscape ls = build_landscape(1.7, 0.6, 1, 2, 0.3);
    auto g = build_grid(ls, 3, 7);
    for (int idx : g->interface_nodes) {
        const double x = g->x[idx];
        if (g->kind[idx] == NodeKind::InterfaceS1) {
            const double m = x / ls.period;
            CHECK(std::fabs(m - std::round(m)) < 1e-12);
        } else {
            const double m = (x - ls.l2) / ls.period;
            CHECK(std::fabs(m - std::round(m)) < 1e-12);
        }
    }
    // per-patch spacing uniform to 1e-14
    for (int i = 1; i < g->n(); ++i) {
        const double h = g->x[i] - g->x[i - 1];
        const int type = g->kind[i - 1] == NodeKind::Interior ? g->patch_of_node[i - 1]
                                                              : right_patch_type(*g, i - 1);
        const double expect = type == 1 ? g->h1 : g->h2;
        CHECK(std::fabs(h - expect) < 1e-14 * (1.0 + std::fabs(g->x[i])));
    }
    CHECK_THROWS_AS(build_grid(ls, 3, 3), ResolutionTooCoarse);
    CHECK_THROWS_AS(build_grid(ls, 0, 8), ResolutionTooCoarse);
}

TEST_CASE("periodic cell layout") {
    Landscape ls = build_landscape(2, 1, 1, 0.5, 0.4);
    auto g = build_periodic_grid(ls, 8);
    CHECK(g->periodic);
    CHECK(g->n() == 16);
    CHECK(g->x[0] == 0.0);
    CHECK(g->kind[0] == NodeKind::InterfaceS1);
    CHECK(g->x[8] == ls.l2);
    CHECK(g->kind[8] == NodeKind::InterfaceS2);
    // wrap spacings stitch the period together
    CHECK(g->h_left[0] == doctest::Approx(ls.l1 / 8));
    CHECK(g->h_right[g->n() - 1] == doctest::Approx(ls.l1 / 8));
}

TEST_CASE("window grid honors the shift") {
    Landscape ls = build_landscape(2, 1, 1, 0.5, 0.4);
    const double y = 0.7;
    auto g = build_window_grid(ls, 5.0, y, 8);
    CHECK(g->x.front() == -5.0);
    CHECK(g->x.back() == 5.0);
    for (int idx : g->interface_nodes) {
        const double shifted = g->x[idx] + y; // must be a point of S
        const double m1 = shifted / ls.period;
        const double m2 = (shifted - ls.l2) / ls.period;
        const bool on_s1 = std::fabs(m1 - std::round(m1)) < 1e-9;
        const bool on_s2 = std::fabs(m2 - std::round(m2)) < 1e-9;
        CHECK((on_s1 || on_s2));
    }
}

TEST_CASE("cut-off ramp") {
    Landscape ls = build_landscape(1, 1, 1, 1, 0.5);
    const int n = 2;
    auto g = build_grid(ls, n, 8);

    SUBCASE("constant data pick up the ramp") {
        Field f = apply_cutoff([](double) { return 1.0; }, g, ls);
        const double eps = 0.25; // min(l1,l2)/4
        for (int i = 0; i < g->n(); ++i) {
            const double x = g->x[i];
            if (x >= -n * ls.period + ls.l2 - eps && x <= n * ls.period - ls.l1 + eps)
                CHECK(f.values[i] == doctest::Approx(1.0));
        }
        CHECK(f.values.front() == 0.0);
        CHECK(f.values.back() == 0.0);
        // affine in between: midpoint of the left ramp
        const double a = -n * ls.period;
        const double flat_lo = a + ls.l2 - eps;
        CHECK(cutoff_value(ls, n, 0.5 * (a + flat_lo)) == doctest::Approx(0.5));
    }

    SUBCASE("data supported in the flat region are unchanged") {
        auto u0 = [](double x) { return x * x < 1.0 ? 1.0 - x * x : 0.0; };
        Field f = apply_cutoff(u0, g, ls);
        for (int i = 0; i < g->n(); ++i) CHECK(f.values[i] == u0(g->x[i]));
    }

    SUBCASE("zero stays zero, negative data are rejected") {
        Field f = apply_cutoff([](double) { return 0.0; }, g, ls);
        for (double v : f.values) CHECK(v == 0.0);
        CHECK_THROWS_AS(apply_cutoff([](double) { return -0.1; }, g, ls), NegativeInitialData);
    }
}
