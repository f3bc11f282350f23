#include "patchkpp/steady.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "patchkpp/eigen.hpp"
#include "patchkpp/linalg.hpp"
#include "patchkpp/pde.hpp"

namespace patchkpp {

namespace {

double sup_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

// discrete elliptic residual on the periodic cell, interface rows included
void elliptic_residual(const Grid& g, const Landscape& ls, const Reaction& r,
                       const std::vector<double>& p, std::vector<double>& out) {
    const int n = g.n();
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        if (g.kind[i] == NodeKind::Interior) {
            const int pt = g.patch_of_node[i];
            const double d = ls.diffusivity(pt);
            const double h = g.h_left[i];
            const double lap = (p[g.left(i)] - 2.0 * p[i] + p[g.right(i)]) / (h * h);
            out[i] = -d * lap - r.f(pt, p[i]);
        } else {
            const bool s1 = g.kind[i] == NodeKind::InterfaceS1;
            const double hL = g.h_left[i], hR = g.h_right[i];
            const double wl = s1 ? 1.0 : ls.sigma;
            const double wr = s1 ? ls.sigma : 1.0;
            const int il = g.left(i), ill = g.left(il);
            const int ir = g.right(i), irr = g.right(ir);
            const double dl = (3.0 * p[i] - 4.0 * p[il] + p[ill]) / (2.0 * hL);
            const double dr = (-3.0 * p[i] + 4.0 * p[ir] - p[irr]) / (2.0 * hR);
            out[i] = wl * dl - wr * dr;
        }
    }
}

// Newton polish of the periodic elliptic system (dense wrap)
double newton_polish(const Grid& g, const Landscape& ls, const Reaction& r,
                     std::vector<double>& p) {
    const int n = g.n();
    DenseMatrix J(n);
    DenseLU lu;
    std::vector<double> res;
    for (int it = 0; it < 40; ++it) {
        elliptic_residual(g, ls, r, p, res);
        const double rn = sup_norm(res);
        if (rn < 1e-13) break;
        J.clear();
        for (int i = 0; i < n; ++i) {
            if (g.kind[i] == NodeKind::Interior) {
                const int pt = g.patch_of_node[i];
                const double d = ls.diffusivity(pt);
                const double h = g.h_left[i];
                J.add(i, g.left(i), -d / (h * h));
                J.add(i, i, 2.0 * d / (h * h) - r.fprime(pt, p[i]));
                J.add(i, g.right(i), -d / (h * h));
            } else {
                const bool s1 = g.kind[i] == NodeKind::InterfaceS1;
                const double hL = g.h_left[i], hR = g.h_right[i];
                const double wl = s1 ? 1.0 : ls.sigma;
                const double wr = s1 ? ls.sigma : 1.0;
                const int il = g.left(i), ill = g.left(il);
                const int ir = g.right(i), irr = g.right(ir);
                J.add(i, i, wl * 1.5 / hL + wr * 1.5 / hR);
                J.add(i, il, -2.0 * wl / hL);
                J.add(i, ill, 0.5 * wl / hL);
                J.add(i, ir, -2.0 * wr / hR);
                J.add(i, irr, 0.5 * wr / hR);
            }
        }
        lu.factor(J);
        for (double& v : res) v = -v;
        lu.solve(res);
        for (int i = 0; i < n; ++i) p[i] += res[i];
    }
    elliptic_residual(g, ls, r, p, res);
    return sup_norm(res);
}

enum class MarchOutcome { Stalled, Converged, Extinct };

// march the periodic problem until the profile settles or dies out
MarchOutcome march(const Landscape& ls, const Reaction& r, Field& f,
                   const SteadyOptions& opts, double horizon,
                   const std::function<void(const Field&)>& on_check = {}) {
    const double cap = std::max(r.cap(), sup_norm(f.values));
    StepperConfig cfg;
    cfg.scheme = Scheme::IMEX;
    cfg.dt = std::min(0.8 * dt_max_imex(r, cap), opts.check_interval / 4.0);
    Stepper stepper(f.grid, ls, r, cfg);
    const long per_check = std::max<long>(1, std::lround(opts.check_interval / cfg.dt));
    const long total = std::max<long>(per_check, std::lround(horizon / cfg.dt));
    std::vector<double> prev = f.values;
    for (long s = 1; s <= total; ++s) {
        stepper.advance(f);
        if (s % per_check == 0) {
            if (on_check) on_check(f);
            if (sup_norm(f.values) < opts.extinct_tol) return MarchOutcome::Extinct;
            if (sup_diff(f.values, prev) < opts.march_tol) return MarchOutcome::Converged;
            prev = f.values;
        }
    }
    return MarchOutcome::Stalled;
}

} // namespace

SteadyState compute_steady_state(const Landscape& ls, const Reaction& reaction,
                                 int grid_resolution, const SteadyOptions& opts) {
    SteadyState out;
    out.lambda1 = lambda1_dispersion(ls, reaction).lambda;
    out.near_critical = std::fabs(out.lambda1) < 1e-3;
    out.grid = build_periodic_grid(ls, grid_resolution);
    out.x = out.grid->x;

    const double M = reaction.cap();
    Field f;
    f.grid = out.grid;
    f.values.assign(out.grid->n(), M);

    double horizon = opts.horizon;
    for (int round = 0; round <= opts.max_doublings; ++round) {
        const MarchOutcome res = march(ls, reaction, f, opts, horizon);
        if (res == MarchOutcome::Extinct) {
            if (out.lambda1 < 0.0 && !out.near_critical)
                throw EigenInconsistent("march died out although lambda1 < 0");
            out.exists = false;
            return out;
        }
        if (res == MarchOutcome::Converged) {
            if (out.lambda1 >= 0.0) {
                // the march stalled above the extinction gate; tiny residual
                // levels are still extinction, anything else is a red flag
                if (sup_norm(f.values) < 1e-4) {
                    out.exists = false;
                    return out;
                }
                throw EigenInconsistent("march settled on a positive profile although lambda1 >= 0");
            }
            out.p = f.values;
            out.residual = newton_polish(*out.grid, ls, reaction, out.p);
            out.min_p = *std::min_element(out.p.begin(), out.p.end());
            out.max_p = *std::max_element(out.p.begin(), out.p.end());
            if (!(out.min_p > 0.0))
                throw EigenInconsistent("polished steady state is not strictly positive");
            out.exists = true;
            return out;
        }
        horizon *= 2.0;
    }
    throw ConvergenceStalled("steady-state march exhausted its horizon budget");
}

double periodic_value(const SteadyState& s, double x) {
    const Grid& g = *s.grid;
    const double l = g.x.back() + g.h_right.back(); // period length
    double r = std::fmod(x, l);
    if (r < 0.0) r += l;
    // find the matching node (grids built from the same landscape share offsets)
    auto it = std::lower_bound(g.x.begin(), g.x.end(), r - 1e-9);
    std::size_t i = std::size_t(it - g.x.begin());
    if (i >= g.x.size() || std::fabs(g.x[i] - r) > 1e-7) {
        // fall back to linear interpolation between cell nodes
        if (i == 0 || i >= g.x.size()) {
            const double x0 = g.x.back(), x1 = l + g.x.front();
            const double t = (r < g.x.front() ? r + l - x0 : r - x0) / (x1 - x0);
            return (1.0 - t) * s.p.back() + t * s.p.front();
        }
        const double t = (r - g.x[i - 1]) / (g.x[i] - g.x[i - 1]);
        return (1.0 - t) * s.p[i - 1] + t * s.p[i];
    }
    return s.p[i];
}

UniquenessReport verify_uniqueness(const SteadyState& steady, const Landscape& ls,
                                   const Reaction& reaction, std::uint64_t seed) {
    if (!steady.exists)
        throw PreconditionError("verify_uniqueness needs an existing steady state");
    UniquenessReport rep;
    const Grid& g = *steady.grid;
    const int n = g.n();
    SteadyOptions opts;

    // small subsolution kappa*phi: pick kappa so that
    // f(x, kappa phi) >= (f'(0) + lambda1/2) kappa phi at every node
    EigenResult eig = lambda1_grid(ls, reaction, g.nodes_per_patch);
    double kappa = reaction.cap();
    for (int tries = 0; tries < 200; ++tries) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            const int pt = g.kind[i] == NodeKind::Interior ? g.patch_of_node[i]
                                                           : left_patch_type(g, i);
            const double s = kappa * eig.phi[i];
            if (s <= 0.0) continue;
            if (reaction.f(pt, s) < (reaction.fprime0(pt) + 0.5 * steady.lambda1) * s)
                ok = false;
        }
        if (ok) break;
        kappa *= 0.5;
    }
    rep.kappa = kappa;

    auto march_from = [&](std::vector<double> start, int monotone) {
        Field f;
        f.grid = steady.grid;
        f.values = std::move(start);
        std::vector<double> prev = f.values;
        bool mono = true;
        const auto watch = [&](const Field& cur) {
            for (int i = 0; i < n; ++i) {
                if (monotone > 0 && cur.values[i] < prev[i] - 1e-10) mono = false;
                if (monotone < 0 && cur.values[i] > prev[i] + 1e-10) mono = false;
            }
            prev = cur.values;
        };
        double horizon = opts.horizon;
        for (int round = 0; round <= opts.max_doublings; ++round) {
            const MarchOutcome res = march(ls, reaction, f, opts, horizon, watch);
            if (res == MarchOutcome::Extinct)
                throw NonUniqueLimit("a start died out although the steady state exists");
            if (res == MarchOutcome::Converged) return std::make_pair(f.values, mono);
            horizon *= 2.0;
        }
        throw ConvergenceStalled("uniqueness march exhausted its horizon budget");
    };

    std::vector<double> from_below(n), from_above(n, reaction.cap()), from_random(n);
    for (int i = 0; i < n; ++i) from_below[i] = kappa * eig.phi[i];
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.05, 1.0);
    for (int i = 0; i < n; ++i) from_random[i] = unif(rng) * reaction.cap();

    auto [pa, mono_up] = march_from(from_below, +1);
    auto [pb, mono_down] = march_from(from_above, -1);
    auto [pc, mono_any] = march_from(from_random, 0);
    (void)mono_any;
    rep.monotone_from_below = mono_up;
    rep.monotone_from_above = mono_down;

    rep.max_pairwise_diff = 0.0;
    for (const auto* q : {&pa, &pb, &pc})
        rep.max_pairwise_diff = std::max(rep.max_pairwise_diff, sup_diff(*q, steady.p));
    if (rep.max_pairwise_diff > 1e-7)
        throw NonUniqueLimit("marched limits disagree beyond 1e-7");
    return rep;
}

AttractionReport attraction_check(const Landscape& ls, const Reaction& reaction,
                                  const std::function<double(double)>& u0, double horizon,
                                  int nodes_per_patch) {
    AttractionReport rep;
    rep.horizon = horizon;
    const double lambda1 = lambda1_dispersion(ls, reaction).lambda;
    rep.persistent = lambda1 < 0.0;
    const double assert_hw = 2.0 * ls.period;

    StepperConfig cfg;
    cfg.scheme = Scheme::IMEX;
    cfg.dt = std::min(0.8 * dt_max_imex(reaction, reaction.cap()), 0.05);
    // invading solutions outrun the diffusive margin; budget for the
    // linear-speed bound 2 sqrt(d_max f1'(0)) on top of it
    const double dmax = std::max(ls.d1, ls.d2);
    const double cbound = 2.0 * std::sqrt(dmax * std::max(reaction.f1_prime0(), 0.0));
    const int tiles = required_tiles(ls, horizon, assert_hw + 1.2 * cbound * horizon);
    Field f = semiflow_apply(u0, horizon, assert_hw, ls, reaction, cfg, nodes_per_patch, tiles);

    double dist = 0.0;
    if (rep.persistent) {
        SteadyState p = compute_steady_state(ls, reaction, nodes_per_patch);
        for (int i = 0; i < f.grid->n(); ++i) {
            if (std::fabs(f.grid->x[i]) > assert_hw) continue;
            dist = std::max(dist, std::fabs(f.values[i] - periodic_value(p, f.grid->x[i])));
        }
    } else {
        for (int i = 0; i < f.grid->n(); ++i)
            if (std::fabs(f.grid->x[i]) <= assert_hw)
                dist = std::max(dist, std::fabs(f.values[i]));
    }
    rep.distance = dist;
    return rep;
}

} // namespace patchkpp
