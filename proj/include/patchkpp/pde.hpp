#ifndef PATCHKPP_PDE_HPP
#define PATCHKPP_PDE_HPP

#include <functional>
#include <memory>

#include "patchkpp/grid.hpp"
#include "patchkpp/landscape.hpp"
#include "patchkpp/linalg.hpp"

namespace patchkpp {

enum class Scheme { ImplicitEulerNewton, IMEX };

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::ImplicitEulerNewton;
    double newton_tol = 1e-12;
    int newton_max_iter = 30;
};

/** Largest stable IMEX step: the explicitly treated reaction must satisfy
 *  1 + dt f'(s) >= 0 on the invariant range, so dt <= 0.5/max|f'|. */
double dt_max_imex(const Reaction& reaction, double cap);

/** One-step integrator for the truncated problem (Dirichlet-zero ends) or
 *  the periodic-cell problem. Interface nodes are shared unknowns; the flux
 *  condition replaces the PDE row there, with second-order one-sided
 *  stencils:
 *      (3u_i - 4u_{i-1} + u_{i-2})/(2 hL) = sigma (-3u_i + 4u_{i+1} - u_{i+2})/(2 hR)
 *  at S1, reciprocal at S2. The linear systems are banded (windowed grids)
 *  or dense (periodic wrap). */
class Stepper {
  public:
    Stepper(GridPtr grid, const Landscape& ls, const Reaction& reaction, StepperConfig config);
    void advance(Field& f);
    const StepperConfig& config() const { return cfg_; }

  private:
    void advance_imex(Field& f);
    void advance_newton(Field& f);
    void residual(const std::vector<double>& w, const std::vector<double>& u_old,
                  std::vector<double>& out) const;

    GridPtr grid_;
    Landscape ls_;
    Reaction reaction_;
    StepperConfig cfg_;
    // workspace
    std::unique_ptr<BandedMatrix> bmat_;
    std::unique_ptr<DenseMatrix> dmat_;
    BandedLU blu_;
    DenseLU dlu_;
    bool imex_factored_ = false;
    std::vector<double> rhs_, w_, f_;
};

struct EvolveOptions {
    int snapshot_every_steps = 0; // 0: only report the final state
    std::function<void(const Field&)> on_snapshot;
    bool check_bounds = true;
    double bound_tol = 1e-9;
};

/** Advance by n = round(T/dt) steps of exactly dt (the reached time is
 *  n*dt). Asserts 0 <= u <= max(K1, K2, ||u0||_inf) + tol throughout. */
void evolve(Field& field, double T, const Landscape& ls, const Reaction& reaction,
            const StepperConfig& config, const EvolveOptions& opts = {});

/** Cut-off ramp of the truncated window: 1 on [-nl+l2-eps, nl-l1+eps],
 *  0 outside (-nl, nl), affine in between, eps = min(l1, l2)/4. */
double cutoff_value(const Landscape& ls, int n_tiles, double x);

/** Nodal samples of cutoff * u0; rejects negative initial data. */
Field apply_cutoff(const std::function<double(double)>& u0, const GridPtr& grid,
                   const Landscape& ls);

/** The semiflow Q_t applied to omega, evaluated on a truncated window wide
 *  enough that boundary effects on |x| <= assert_halfwidth stay below
 *  tolerance: margin >= 4 sqrt(d_max t) + 2l. An explicit n_tiles below the
 *  required width throws WindowTooSmall. */
Field semiflow_apply(const std::function<double(double)>& omega, double t,
                     double assert_halfwidth, const Landscape& ls, const Reaction& reaction,
                     const StepperConfig& config, int nodes_per_patch, int n_tiles_override = -1);

/** Smallest n_tiles satisfying the window-margin rule. */
int required_tiles(const Landscape& ls, double t, double assert_halfwidth);

} // namespace patchkpp

#endif
