#ifndef PATCHKPP_STEADY_HPP
#define PATCHKPP_STEADY_HPP

#include <cstdint>
#include <functional>

#include "patchkpp/grid.hpp"
#include "patchkpp/landscape.hpp"

namespace patchkpp {

/** Periodic positive steady state, or the extinction verdict. p is sampled
 *  on one period (empty when extinct); residual is the sup-norm defect of
 *  the discrete elliptic system including the interface rows after the
 *  Newton polish. near_critical flags |lambda1| < 1e-3, where the verdict
 *  converges too slowly to be trusted blindly. */
struct SteadyState {
    bool exists = false;
    GridPtr grid;
    std::vector<double> x;
    std::vector<double> p;
    double residual = 0.0;
    double min_p = 0.0;
    double max_p = 0.0;
    double lambda1 = 0.0;
    bool near_critical = false;
};

struct SteadyOptions {
    double horizon = 400.0;        // initial march horizon, doubled on retry
    int max_doublings = 4;
    double check_interval = 1.0;   // compare snapshots this far apart
    double march_tol = 1e-10;      // ||u(t+D) - u(t)|| convergence gate
    double extinct_tol = 1e-8;     // ||u|| extinction gate
};

/** March the periodic-cell problem from the constant max(K1, K2) downward;
 *  Newton-polish the limit when lambda1 < 0, detect extinction otherwise.
 *  Disagreement between sign(lambda1) and the observed behavior raises
 *  EigenInconsistent. */
SteadyState compute_steady_state(const Landscape& ls, const Reaction& reaction,
                                 int grid_resolution, const SteadyOptions& opts = {});

/** Evaluate the periodic profile at any x by period folding; x must land on
 *  a cell node (the evolution grids share node offsets by construction). */
double periodic_value(const SteadyState& s, double x);

struct UniquenessReport {
    double max_pairwise_diff = 0.0;
    bool monotone_from_above = false;
    bool monotone_from_below = false;
    double kappa = 0.0;
};

/** Re-run the march from kappa*phi (small subsolution), the constant cap M,
 *  and seeded random positive data; all three must land on the same p
 *  within 1e-7, the M start decreasing and the kappa*phi start increasing
 *  in t. Throws NonUniqueLimit on mismatch. */
UniquenessReport verify_uniqueness(const SteadyState& steady, const Landscape& ls,
                                   const Reaction& reaction, std::uint64_t seed = 1);

struct AttractionReport {
    bool persistent = false;     // sign of lambda1
    double distance = 0.0;       // sup |u - p| (or sup |u|) on |x| <= 2l at the horizon
    double horizon = 0.0;
};

/** Evolve u0 on a wide truncated window and report the distance to p
 *  (lambda1 < 0) or to zero (lambda1 >= 0) on the assertion region. */
AttractionReport attraction_check(const Landscape& ls, const Reaction& reaction,
                                  const std::function<double(double)>& u0, double horizon,
                                  int nodes_per_patch);

} // namespace patchkpp

#endif
