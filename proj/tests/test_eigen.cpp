#include <doctest.h>

#include <cmath>
#include <random>

#include "patchkpp/eigen.hpp"
#include "patchkpp/linalg.hpp"

using namespace patchkpp;

namespace {
const Landscape kRef = build_landscape(2, 1, 1, 0.5, 0.4);
const Reaction kRefReaction = Reaction::logistic(1.0, -1.0);
constexpr double kPi = 3.14159265358979323846;
} // namespace

TEST_CASE("equal linear rates force the constant eigenfunction") {
    Landscape ls = build_landscape(1, 1, 1, 1, 0.5);
    Reaction r = Reaction::logistic(1.0, 1.0);
    EigenResult e = lambda1_dispersion(ls, r);
    CHECK(e.lambda == -1.0);
    for (double v : e.phi) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.residual == 0.0);
}

TEST_CASE("dispersion root against the grid oracle (sigma = 1)") {
    // source-sink tile, continuous-flux case: the grid eigensolver with
    // Richardson extrapolation is the independent oracle for the root
    Landscape ls = build_landscape_sigma(2, 1, 1, 1, 1.0);
    EigenResult disp = lambda1_dispersion(ls, kRefReaction);
    const double oracle = lambda1_grid_richardson(ls, kRefReaction, 256);
    CHECK(std::fabs(disp.lambda - oracle) < 1e-8);
    // frozen from the extrapolated oracle
    CHECK(disp.lambda == doctest::Approx(-0.46603727588351712).epsilon(1e-10));
    CHECK(disp.residual < 1e-12);
}

TEST_CASE("sigma -> 0 pushes lambda_1 to -f1'(0)") {
    Landscape ls = build_landscape_sigma(2, 1, 1, 1, 1e-6);
    CHECK(std::fabs(lambda1_dispersion(ls, kRefReaction).lambda - (-1.0)) < 1e-3);
}

TEST_CASE("sigma -> infinity limit") {
    Landscape ls = build_landscape_sigma(2, 1, 1, 1, 1e6);
    const double limit = std::min(1.0 * kPi * kPi / (2.0 * 2.0) - 1.0, 1.0);
    CHECK(std::fabs(lambda1_dispersion(ls, kRefReaction).lambda - limit) < 1e-3);
}

TEST_CASE("lambda_1 lies in [-f1'(0), -f2'(0)] across random configurations") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        Landscape ls = build_landscape(0.2 + 3 * U(rng), 0.2 + 3 * U(rng), 0.1 + 2 * U(rng),
                                       0.1 + 2 * U(rng), 0.05 + 0.9 * U(rng));
        const double f1 = -1.0 + 3 * U(rng);
        const double f2 = f1 - 2.5 * U(rng);
        Reaction r = Reaction::logistic(f1, f2);
        const double lam = lambda1_dispersion(ls, r).lambda;
        CHECK(lam >= -f1 - 1e-10);
        CHECK(lam <= -f2 + 1e-10);
        // the Floquet route must land on the same root everywhere
        CHECK(std::fabs(lambda_mu_transfer(ls, r, 0.0).lambda - lam) < 1e-10);
    }
}

TEST_CASE("lambda_1 is strictly increasing in sigma") {
    double prev = -1e300;
    for (double s : {0.25, 0.7, 1.5, 3.0, 8.0}) {
        Landscape ls = build_landscape_sigma(2, 1, 1, 0.5, s);
        const double lam = lambda1_dispersion(ls, kRefReaction).lambda;
        CHECK(lam > prev);
        prev = lam;
    }
}

TEST_CASE("grid eigensolver") {
    SUBCASE("homogeneous landscape is exact (constant eigenfunction)") {
        Landscape ls = build_landscape(1, 1, 1, 1, 0.5);
        Reaction r = Reaction::logistic(0.7, 0.7);
        EigenResult e = lambda1_grid(ls, r, 16);
        CHECK(std::fabs(e.lambda - (-0.7)) < 1e-9);
        for (int i = 0; i < int(e.phi.size()); ++i) CHECK(e.phi[i] > 0.0);
    }
    SUBCASE("second-order convergence toward the dispersion root") {
        const double exact = lambda1_dispersion(kRef, kRefReaction).lambda;
        const double e16 = lambda1_grid(kRef, kRefReaction, 16).lambda - exact;
        const double e32 = lambda1_grid(kRef, kRefReaction, 32).lambda - exact;
        const double e64 = lambda1_grid(kRef, kRefReaction, 64).lambda - exact;
        CHECK(e16 / e32 == doctest::Approx(4.0).epsilon(0.15));
        CHECK(e32 / e64 == doctest::Approx(4.0).epsilon(0.15));
    }
    SUBCASE("sigma-monotonicity carries over to the discretization") {
        Landscape lo = build_landscape_sigma(2, 1, 1, 0.5, 0.5);
        Landscape hi = build_landscape_sigma(2, 1, 1, 0.5, 2.0);
        CHECK(lambda1_grid(lo, kRefReaction, 48).lambda <
              lambda1_grid(hi, kRefReaction, 48).lambda);
    }
    SUBCASE("eigenfunction is positive with sup-norm one") {
        EigenResult e = lambda1_grid(kRef, kRefReaction, 32);
        double mx = 0.0;
        for (double v : e.phi) {
            CHECK(v > 0.0);
            mx = std::max(mx, v);
        }
        CHECK(mx == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_THROWS_AS(lambda1_grid(kRef, kRefReaction, 4), ResolutionTooCoarse);
    }
}

TEST_CASE("mu-family") {
    SUBCASE("lambda(0) agrees with lambda_1 across methods") {
        const double disp = lambda1_dispersion(kRef, kRefReaction).lambda;
        const MuFamilySample t = lambda_mu_transfer(kRef, kRefReaction, 0.0);
        CHECK(std::fabs(t.lambda - disp) < 1e-12);
        const double grid = lambda1_grid_richardson(kRef, kRefReaction, 64);
        CHECK(std::fabs(grid - disp) < 1e-6);
    }
    SUBCASE("homogeneous medium: lambda(mu) = -d mu^2 - m analytically") {
        Landscape ls = build_landscape(1, 1, 2, 2, 0.5);
        Reaction r = Reaction::logistic(0.8, 0.8);
        for (double mu : {0.0, 0.35, 1.0, 2.2}) {
            const MuFamilySample s = lambda_mu_transfer(ls, r, mu);
            CHECK(std::fabs(s.lambda - (-2.0 * mu * mu - 0.8)) < 1e-11);
        }
    }
    SUBCASE("method dispatcher") {
        const MuFamilySample a = lambda_mu(kRef, kRefReaction, 0.3, LambdaMuMethod::TransferMatrix);
        const MuFamilySample b =
            lambda_mu(kRef, kRefReaction, 0.3, LambdaMuMethod::GridDiscretization, 64);
        CHECK(std::fabs(a.lambda - b.lambda) < 1e-3);
    }
    SUBCASE("transfer-matrix vs drifted grid at mu = 0.7") {
        const MuFamilySample t = lambda_mu_checked(kRef, kRefReaction, 0.7, 64);
        const double lh = lambda_mu_grid(kRef, kRefReaction, 0.7, 64).lambda;
        const double lh2 = lambda_mu_grid(kRef, kRefReaction, 0.7, 128).lambda;
        CHECK(std::fabs((4 * lh2 - lh) / 3 - t.lambda) < 1e-6);
    }
    SUBCASE("the E_mu monodromy closes at the Bloch root") {
        // cross-validates the jump matrices J1, J2 derived from the flux
        // conditions: det(M(lambda(mu)) - I) must vanish
        const MuFamilySample s = lambda_mu_transfer(kRef, kRefReaction, 0.5);
        const Mat2 m = monodromy(kRef, kRefReaction, 0.5, s.lambda);
        const double det = (m[0] - 1.0) * (m[3] - 1.0) - m[1] * m[2];
        double scale = 0.0;
        for (double v : m) scale = std::max(scale, std::fabs(v));
        CHECK(std::fabs(det) < 1e-10 * scale * scale);
    }
    SUBCASE("concavity and evenness of lambda(mu)") {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> U(-3.0, 3.0);
        auto lam = [&](double mu) { return lambda_mu_transfer(kRef, kRefReaction, mu).lambda; };
        for (int i = 0; i < 25; ++i) {
            const double m1 = U(rng), m2 = U(rng);
            const double l1v = lam(m1), l2v = lam(m2);
            for (double t : {0.25, 0.5, 0.75})
                CHECK(lam(t * m1 + (1 - t) * m2) >= t * l1v + (1 - t) * l2v - 1e-8);
        }
        for (int i = 0; i < 20; ++i) {
            const double m = U(rng);
            CHECK(std::fabs(lam(m) - lam(-m)) < 1e-9);
        }
    }
    SUBCASE("eigenfunction samples satisfy the max-inf characterization") {
        // for the discrete eigenvector, inf over interior nodes of
        // (L_mu psi)/psi must sit at lambda(mu)
        const double mu = 0.7;
        auto g = build_periodic_grid(kRef, 64);
        DenseMatrix A(g->n());
        std::vector<double> B;
        assemble_periodic_pencil(*g, kRef, kRefReaction, mu, A, B);
        const MuFamilySample s = lambda_mu_grid(kRef, kRefReaction, mu, 64);
        std::vector<double> Ax;
        A.multiply(s.psi, Ax);
        double inf = 1e300;
        for (int i = 0; i < g->n(); ++i)
            if (B[i] == 1.0) inf = std::min(inf, Ax[i] / s.psi[i]);
        CHECK(inf <= s.lambda + 1e-6);
        CHECK(std::fabs(inf - s.lambda) < 1e-6);
    }
}

TEST_CASE("Dirichlet eigenvalues") {
    SUBCASE("homogeneous analytic value d pi^2/(4R^2) - m") {
        Landscape ls = build_landscape(1, 1, 1, 1, 0.5);
        Reaction r = Reaction::logistic(1.0, 1.0);
        const double exact = kPi * kPi / 16.0 - 1.0;
        CHECK(std::fabs(lambda_dirichlet(ls, r, 2.0, 0.0, 64).lambda - exact) < 1e-5);
    }
    SUBCASE("strictly decreasing in R and above lambda_1") {
        const double lam1 = lambda1_dispersion(kRef, kRefReaction).lambda;
        double prev = 1e300;
        for (double rfac : {0.8, 1.7, 3.3}) {
            EigenResult e = lambda_dirichlet(kRef, kRefReaction, rfac * kRef.period, 0.0, 32);
            CHECK(e.lambda < prev);
            CHECK(e.lambda > lam1);
            prev = e.lambda;
        }
    }
    SUBCASE("periodic in the shift y") {
        EigenResult a = lambda_dirichlet(kRef, kRefReaction, 5.0, 0.4, 24);
        EigenResult b = lambda_dirichlet(kRef, kRefReaction, 5.0, 0.4 + kRef.period, 24);
        CHECK(std::fabs(a.lambda - b.lambda) < 1e-12);
        EigenResult c = lambda_dirichlet(kRef, kRefReaction, 5.0, 1.13, 24);
        CHECK(std::isfinite(c.lambda));
        for (std::size_t i = 0; i < c.phi.size(); ++i)
            if (c.x[i] > -5.0 && c.x[i] < 5.0) CHECK(c.phi[i] > 0.0);
    }
}

TEST_CASE("critical patch length") {
    SUBCASE("vanishing sink rate gives a vanishing threshold") {
        Reaction weak = Reaction::logistic(1.0, -1e-12);
        CHECK(critical_patch_length(kRef, weak).l1c < 1e-5);
    }
    SUBCASE("self-consistency: lambda_1(l1 = l1c) = 0 within 1e-8") {
        for (double f2 : {-1.5, -1.0, -0.4}) {
            Reaction r = Reaction::logistic(1.0, f2);
            const CriticalLengths cl = critical_patch_length(kRef, r);
            Landscape at = build_landscape(cl.l1c, kRef.l2, kRef.d1, kRef.d2, kRef.alpha);
            CHECK(std::fabs(lambda1_dispersion(at, r).lambda) < 1e-8);
        }
    }
    SUBCASE("l2 -> infinity approaches L1c") {
        Landscape wide = build_landscape(2, 1e3, 1, 0.5, 0.4);
        const CriticalLengths cl = critical_patch_length(wide, kRefReaction);
        CHECK(std::fabs(cl.l1c - cl.L1c) < 1e-9);
    }
    SUBCASE("critical sink rate") {
        const CriticalLengths cl = critical_patch_length(kRef, kRefReaction);
        REQUIRE(cl.f2prime_c.has_value());
        // at the critical rate the dispersion root sits at zero
        Reaction at = Reaction::logistic(1.0, *cl.f2prime_c);
        Landscape wide = build_landscape(2, 1e3, 1, 0.5, 0.4);
        CHECK(std::fabs(lambda1_dispersion(wide, at).lambda) < 1e-6);
        // l1 long enough that tan blows up: no critical rate exists
        Landscape longl1 = build_landscape(4, 1, 1, 0.5, 0.4);
        CHECK_FALSE(critical_patch_length(longl1, kRefReaction).f2prime_c.has_value());
    }
    SUBCASE("sign preconditions") {
        CHECK_THROWS_AS(critical_patch_length(kRef, Reaction::logistic(1.0, 0.5)),
                        NotSourceSink);
    }
}
