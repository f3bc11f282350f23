#include "patchkpp/pde.hpp"

#include <algorithm>
#include <cmath>

namespace patchkpp {

double dt_max_imex(const Reaction& reaction, double cap) {
    const double L = reaction.lipschitz(cap);
    if (L == 0.0) return 1.0;
    return 0.5 / L;
}

Stepper::Stepper(GridPtr grid, const Landscape& ls, const Reaction& reaction,
                 StepperConfig config)
    : grid_(std::move(grid)), ls_(ls), reaction_(reaction), cfg_(config) {
    if (!(cfg_.dt > 0.0)) throw NonPositiveParameter("dt must be positive");
    const int n = grid_->n();
    rhs_.resize(n);
    w_.resize(n);
    f_.resize(n);
    if (grid_->periodic)
        dmat_ = std::make_unique<DenseMatrix>(n);
    else
        bmat_ = std::make_unique<BandedMatrix>(n, 2, 2);
}

namespace {

// Fill one matrix row of the time-stepping system. For interior nodes the
// row is  w_i - dt (d Lap w + reac_diag w)_i ; interface and boundary rows
// are the stationary constraints.
template <typename Setter>
void fill_row(const Grid& g, const Landscape& ls, int i, double dt, double reac_diag,
              Setter&& set) {
    switch (g.kind[i]) {
        case NodeKind::Boundary:
            set(i, i, 1.0);
            break;
        case NodeKind::Interior: {
            const int pt = g.patch_of_node[i];
            const double d = ls.diffusivity(pt);
            const double h = g.h_left[i];
            set(i, g.left(i), -dt * d / (h * h));
            set(i, i, 1.0 + 2.0 * dt * d / (h * h) - dt * reac_diag);
            set(i, g.right(i), -dt * d / (h * h));
            break;
        }
        case NodeKind::InterfaceS1:
        case NodeKind::InterfaceS2: {
            const bool s1 = g.kind[i] == NodeKind::InterfaceS1;
            const double hL = g.h_left[i];
            const double hR = g.h_right[i];
            const double wl = s1 ? 1.0 : ls.sigma;
            const double wr = s1 ? ls.sigma : 1.0;
            const int il = g.left(i), ill = g.left(il);
            const int ir = g.right(i), irr = g.right(ir);
            set(i, i, wl * 1.5 / hL + wr * 1.5 / hR);
            set(i, il, -2.0 * wl / hL);
            set(i, ill, 0.5 * wl / hL);
            set(i, ir, -2.0 * wr / hR);
            set(i, irr, 0.5 * wr / hR);
            break;
        }
    }
}

} // namespace

void Stepper::residual(const std::vector<double>& w, const std::vector<double>& u_old,
                       std::vector<double>& out) const {
    const Grid& g = *grid_;
    const int n = g.n();
    out.resize(n);
    const double dt = cfg_.dt;
    for (int i = 0; i < n; ++i) {
        switch (g.kind[i]) {
            case NodeKind::Boundary:
                out[i] = w[i];
                break;
            case NodeKind::Interior: {
                const int pt = g.patch_of_node[i];
                const double d = ls_.diffusivity(pt);
                const double h = g.h_left[i];
                const double lap = (w[g.left(i)] - 2.0 * w[i] + w[g.right(i)]) / (h * h);
                out[i] = w[i] - u_old[i] - dt * (d * lap + reaction_.f(pt, w[i]));
                break;
            }
            case NodeKind::InterfaceS1:
            case NodeKind::InterfaceS2: {
                const bool s1 = g.kind[i] == NodeKind::InterfaceS1;
                const double hL = g.h_left[i];
                const double hR = g.h_right[i];
                const double wl = s1 ? 1.0 : ls_.sigma;
                const double wr = s1 ? ls_.sigma : 1.0;
                const int il = g.left(i), ill = g.left(il);
                const int ir = g.right(i), irr = g.right(ir);
                const double dl = (3.0 * w[i] - 4.0 * w[il] + w[ill]) / (2.0 * hL);
                const double dr = (-3.0 * w[i] + 4.0 * w[ir] - w[irr]) / (2.0 * hR);
                out[i] = wl * dl - wr * dr;
                break;
            }
        }
    }
}

void Stepper::advance_imex(Field& f) {
    const Grid& g = *grid_;
    const int n = g.n();
    if (!imex_factored_) {
        if (g.periodic) {
            dmat_->clear();
            for (int i = 0; i < n; ++i)
                fill_row(g, ls_, i, cfg_.dt, 0.0,
                         [&](int r, int c, double v) { dmat_->add(r, c, v); });
            dlu_.factor(*dmat_);
        } else {
            bmat_->clear();
            for (int i = 0; i < n; ++i)
                fill_row(g, ls_, i, cfg_.dt, 0.0,
                         [&](int r, int c, double v) { bmat_->add(r, c, v); });
            blu_.factor(*bmat_);
        }
        imex_factored_ = true;
    }
    for (int i = 0; i < n; ++i) {
        if (g.kind[i] == NodeKind::Interior) {
            const int pt = g.patch_of_node[i];
            rhs_[i] = f.values[i] + cfg_.dt * reaction_.f(pt, f.values[i]);
        } else {
            rhs_[i] = 0.0;
        }
    }
    if (g.periodic)
        dlu_.solve(rhs_);
    else
        blu_.solve(rhs_);
    f.values = rhs_;
    f.time += cfg_.dt;
}

void Stepper::advance_newton(Field& f) {
    const Grid& g = *grid_;
    const int n = g.n();
    w_ = f.values;
    bool done = false;
    for (int it = 0; it < cfg_.newton_max_iter; ++it) {
        residual(w_, f.values, f_);
        double rn = 0.0;
        for (double v : f_) rn = std::max(rn, std::fabs(v));
        if (!std::isfinite(rn)) throw NewtonDiverged("non-finite Newton residual");
        if (rn < cfg_.newton_tol) {
            done = true;
            break;
        }
        // Jacobian: stationary rows are linear; interior rows get the
        // current reaction slope on the diagonal
        if (g.periodic) {
            dmat_->clear();
            for (int i = 0; i < n; ++i) {
                const double slope = g.kind[i] == NodeKind::Interior
                                         ? reaction_.fprime(g.patch_of_node[i], w_[i])
                                         : 0.0;
                fill_row(g, ls_, i, cfg_.dt, slope,
                         [&](int r, int c, double v) { dmat_->add(r, c, v); });
            }
            dlu_.factor(*dmat_);
            for (int i = 0; i < n; ++i) rhs_[i] = -f_[i];
            dlu_.solve(rhs_);
        } else {
            bmat_->clear();
            for (int i = 0; i < n; ++i) {
                const double slope = g.kind[i] == NodeKind::Interior
                                         ? reaction_.fprime(g.patch_of_node[i], w_[i])
                                         : 0.0;
                fill_row(g, ls_, i, cfg_.dt, slope,
                         [&](int r, int c, double v) { bmat_->add(r, c, v); });
            }
            blu_.factor(*bmat_);
            for (int i = 0; i < n; ++i) rhs_[i] = -f_[i];
            blu_.solve(rhs_);
        }
        for (int i = 0; i < n; ++i) w_[i] += rhs_[i];
    }
    if (!done) {
        residual(w_, f.values, f_);
        double rn = 0.0;
        for (double v : f_) rn = std::max(rn, std::fabs(v));
        if (!(rn < cfg_.newton_tol))
            throw NewtonDiverged("Newton iteration exceeded its budget");
    }
    f.values = w_;
    f.time += cfg_.dt;
}

void Stepper::advance(Field& f) {
    if (cfg_.scheme == Scheme::IMEX)
        advance_imex(f);
    else
        advance_newton(f);
}

void evolve(Field& field, double T, const Landscape& ls, const Reaction& reaction,
            const StepperConfig& config, const EvolveOptions& opts) {
    if (!(T > 0.0)) throw NonPositiveParameter("evolve requires T > 0");
    double u0max = 0.0, u0min = 0.0;
    for (double v : field.values) {
        u0max = std::max(u0max, v);
        u0min = std::min(u0min, v);
    }
    if (u0min < -opts.bound_tol) throw NegativeInitialData("initial data must be nonnegative");
    const double bound = std::max(reaction.cap(), u0max);

    Stepper stepper(field.grid, ls, reaction, config);
    const long nsteps = std::max<long>(1, std::lround(T / config.dt));
    if (opts.on_snapshot) opts.on_snapshot(field);
    for (long s = 1; s <= nsteps; ++s) {
        stepper.advance(field);
        if (opts.check_bounds) {
            double mx = 0.0, mn = 0.0;
            for (double v : field.values) {
                mx = std::max(mx, v);
                mn = std::min(mn, v);
            }
            if (!(mx <= bound + opts.bound_tol) || !(mn >= -opts.bound_tol))
                throw BoundViolated(
                    "solution left [0, max(K1,K2,||u0||)] by more than tol; steep "
                    "under-resolved data near an interface can cause this, refine the "
                    "grid or raise the bound tolerance");
        }
        if (opts.on_snapshot && opts.snapshot_every_steps > 0 &&
            (s % opts.snapshot_every_steps == 0 || s == nsteps))
            opts.on_snapshot(field);
    }
    if (opts.on_snapshot && opts.snapshot_every_steps == 0) opts.on_snapshot(field);
}

double cutoff_value(const Landscape& ls, int n_tiles, double x) {
    const double l = ls.period;
    const double eps = std::min(ls.l1, ls.l2) / 4.0;
    const double a = -n_tiles * l;
    const double b = n_tiles * l;
    const double flat_lo = a + ls.l2 - eps;
    const double flat_hi = b - ls.l1 + eps;
    if (x <= a || x >= b) return 0.0;
    if (x >= flat_lo && x <= flat_hi) return 1.0;
    if (x < flat_lo) return (x - a) / (flat_lo - a);
    return (b - x) / (b - flat_hi);
}

Field apply_cutoff(const std::function<double(double)>& u0, const GridPtr& grid,
                   const Landscape& ls) {
    Field f;
    f.grid = grid;
    f.values.resize(grid->n());
    for (int i = 0; i < grid->n(); ++i) {
        const double v = u0(grid->x[i]);
        if (v < 0.0) throw NegativeInitialData("initial data must be nonnegative");
        f.values[i] = cutoff_value(ls, grid->n_tiles, grid->x[i]) * v;
    }
    return f;
}

int required_tiles(const Landscape& ls, double t, double assert_halfwidth) {
    const double dmax = std::max(ls.d1, ls.d2);
    const double margin = 4.0 * std::sqrt(dmax * std::max(t, 0.0)) + 2.0 * ls.period;
    return std::max(1, int(std::ceil((assert_halfwidth + margin) / ls.period)));
}

Field semiflow_apply(const std::function<double(double)>& omega, double t,
                     double assert_halfwidth, const Landscape& ls, const Reaction& reaction,
                     const StepperConfig& config, int nodes_per_patch, int n_tiles_override) {
    const int need = required_tiles(ls, t, assert_halfwidth);
    int n_tiles = n_tiles_override > 0 ? n_tiles_override : need;
    if (n_tiles < need)
        throw WindowTooSmall("window narrower than the margin rule allows");
    auto grid = build_grid(ls, n_tiles, nodes_per_patch);
    Field f = apply_cutoff(omega, grid, ls);
    if (t > 0.0) evolve(f, t, ls, reaction, config);
    return f;
}

} // namespace patchkpp
