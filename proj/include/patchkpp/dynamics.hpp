#ifndef PATCHKPP_DYNAMICS_HPP
#define PATCHKPP_DYNAMICS_HPP

#include <optional>
#include <vector>

#include "patchkpp/grid.hpp"
#include "patchkpp/landscape.hpp"
#include "patchkpp/steady.hpp"

namespace patchkpp {

struct SpeedSample {
    double mu;
    double lambda;
    double phi; // -lambda/mu
};

/** Spreading speed by the variational formula c* = inf_{mu>0} -lambda(mu)/mu,
 *  minimized by golden section on log mu with a parabolic refinement of the
 *  minimizer. Rightward and leftward speeds are computed independently and
 *  must agree (lambda is even in mu). */
struct SpeedResult {
    double c_star = 0.0;
    double mu_star = 0.0;
    double lambda_at_mu_star = 0.0;
    double lambda1 = 0.0;
    double c_star_left = 0.0;
    double stationarity = 0.0; // |d/dmu (-lambda/mu)| at mu_star
    bool phi_quasiconvex = true;
    std::vector<SpeedSample> samples;
    std::vector<std::array<double, 2>> bracket_history;
};

SpeedResult spreading_speed(const Landscape& ls, const Reaction& reaction,
                            int cross_check_nodes = 64);

struct SimParams {
    double T = 40.0;
    double dt = 5e-3;
    int nodes_per_patch = 16;
    std::optional<double> level;       // default: p_min / 2
    double snapshot_dt = 0.25;         // front-trace cadence
    // compactly supported initial bump, clamped to [0, p]
    double bump_center = 0.0;
    std::optional<double> bump_width;  // default: 2l
    std::optional<double> bump_height; // default: 0.9 p_min; 0 means u0 == 0
};

/** Front positions over time (rightmost and leftmost crossings of the level,
 *  linearly interpolated between nodes) and the fitted speeds over the last
 *  60% of the horizon. */
struct FrontTrace {
    double level = 0.0;
    std::vector<double> times;
    std::vector<double> x_right;
    std::vector<double> x_left;
    double c_right = 0.0, c_right_stderr = 0.0;
    double c_left = 0.0, c_left_stderr = 0.0;
    double t_transient = 0.0; // fit used t >= t_transient
};

FrontTrace measure_front_speed(const Landscape& ls, const Reaction& reaction,
                               const SimParams& sim);

/** Pulsating-wave diagnostics from a long front run: with T_period = l/c_fit,
 *  the quasi-periodicity defect D = max |u(t + T_period, x + l) - u(t, x)|
 *  over late times and a window around the front, plus the worst violation
 *  of time-monotonicity behind the front. */
struct PulsatingWaveReport {
    double defect = 0.0;
    double monotonicity_defect = 0.0;
    double T_period = 0.0;
    double c_fitted = 0.0;
    double p_sup = 0.0;
};

PulsatingWaveReport pulsating_wave_check(const Landscape& ls, const Reaction& reaction,
                                         const SimParams& sim);

} // namespace patchkpp

#endif
