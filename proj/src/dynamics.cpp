#include "patchkpp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "patchkpp/eigen.hpp"
#include "patchkpp/linalg.hpp"
#include "patchkpp/pde.hpp"

namespace patchkpp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PhiEval {
    const Landscape* ls;
    const Reaction* reaction;
    double direction; // +1 rightward (lambda(mu)), -1 leftward (lambda(-mu))
    std::vector<SpeedSample>* samples;

    double operator()(double mu) const {
        const MuFamilySample s = lambda_mu_transfer(*ls, *reaction, direction * mu);
        const double phi = -s.lambda / mu;
        if (samples) samples->push_back({direction * mu, s.lambda, phi});
        return phi;
    }
};

// golden-section on log(mu), then a parabolic refinement of the vertex
std::pair<double, double> minimize_phi(const PhiEval& phi, std::vector<std::array<double, 2>>* bracket_history) {
    // bracket by doubling (and halving, if phi already rises at the start)
    double m0 = 1e-3;
    double f0 = phi(m0);
    double m1 = 2.0 * m0;
    double f1 = phi(m1);
    int guard = 0;
    while (f1 < f0) {
        m0 = m1;
        f0 = f1;
        m1 *= 2.0;
        f1 = phi(m1);
        if (++guard > 80) throw BracketNotFound("phi(mu) kept decreasing while doubling mu");
    }
    double lo = m0 / 2.0, hi = m1;
    if (guard == 0) {
        // phi increased immediately: walk down until it decreases again
        double md = m0 / 2.0, fd = phi(md);
        while (fd < f0) {
            m1 = m0;
            m0 = md;
            f0 = fd;
            md /= 2.0;
            fd = phi(md);
            if (++guard > 80) throw BracketNotFound("phi(mu) kept decreasing while halving mu");
        }
        lo = md;
        hi = m1;
    }
    if (bracket_history) bracket_history->push_back({lo, hi});

    // golden section on t = ln(mu)
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::log(lo), b = std::log(hi);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = phi(std::exp(c)), fd2 = phi(std::exp(d));
    while ((b - a) > 1e-10) {
        if (fc < fd2) {
            b = d;
            d = c;
            fd2 = fc;
            c = b - gr * (b - a);
            fc = phi(std::exp(c));
        } else {
            a = c;
            c = d;
            fc = fd2;
            d = a + gr * (b - a);
            fd2 = phi(std::exp(d));
        }
        if (bracket_history) bracket_history->push_back({std::exp(a), std::exp(b)});
    }
    double mu = std::exp(0.5 * (a + b));

    // parabolic vertex through mu(1 +- eps) sharpens the minimizer beyond
    // the flat-valley resolution of the section search
    const double eps = 1e-4;
    const double xm = mu * (1.0 - eps), xp = mu * (1.0 + eps);
    const double fm = phi(xm), f00 = phi(mu), fp = phi(xp);
    const double d1 = (mu - xm), d2 = (mu - xp);
    const double num = d1 * d1 * (f00 - fp) - d2 * d2 * (f00 - fm);
    const double den = d1 * (f00 - fp) - d2 * (f00 - fm);
    if (std::fabs(den) > 0.0) {
        const double vertex = mu - 0.5 * num / den;
        if (vertex > xm && vertex < xp) mu = vertex;
    }
    return {mu, phi(mu)};
}

} // namespace

SpeedResult spreading_speed(const Landscape& ls, const Reaction& reaction,
                            int cross_check_nodes) {
    SpeedResult out;
    out.lambda1 = lambda1_dispersion(ls, reaction).lambda;
    if (!(out.lambda1 < 0.0))
        throw NotPersistent("spreading speed requires lambda1 < 0");

    PhiEval right{&ls, &reaction, +1.0, &out.samples};
    auto [mu_star, c_star] = minimize_phi(right, &out.bracket_history);
    out.mu_star = mu_star;
    out.c_star = c_star;

    PhiEval left{&ls, &reaction, -1.0, &out.samples};
    auto [mu_left, c_left] = minimize_phi(left, nullptr);
    (void)mu_left;
    out.c_star_left = c_left;
    if (std::fabs(out.c_star - out.c_star_left) > 1e-8 * std::max(1.0, out.c_star))
        throw MethodsDisagree("rightward and leftward variational speeds disagree");

    // grid cross-check of the transfer-matrix eigenvalue at the minimizer
    const MuFamilySample at_star =
        lambda_mu_checked(ls, reaction, mu_star, cross_check_nodes);
    out.lambda_at_mu_star = at_star.lambda;

    // first-order condition of the minimization
    const double h = 1e-5 * mu_star;
    PhiEval probe{&ls, &reaction, +1.0, nullptr};
    out.stationarity = std::fabs((probe(mu_star + h) - probe(mu_star - h)) / (2.0 * h));

    // quasi-convexity of the sampled phi table: discrete slope changes sign
    // at most once, downward to upward
    std::vector<SpeedSample> tab;
    for (const SpeedSample& s : out.samples)
        if (s.mu > 0.0) tab.push_back(s);
    std::sort(tab.begin(), tab.end(),
              [](const SpeedSample& a, const SpeedSample& b) { return a.mu < b.mu; });
    int transitions = 0;
    int last_sign = 0;
    for (std::size_t i = 1; i < tab.size(); ++i) {
        const double df = tab[i].phi - tab[i - 1].phi;
        const double scale = 1e-12 * (std::fabs(tab[i].phi) + std::fabs(tab[i - 1].phi));
        const int sign = df > scale ? 1 : (df < -scale ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++transitions;
        if (last_sign == 1 && sign == -1) out.phi_quasiconvex = false;
        last_sign = sign;
    }
    if (transitions > 1) out.phi_quasiconvex = false;
    return out;
}

namespace {

// rightmost/leftmost crossings of the level, linearly interpolated
std::pair<double, double> level_crossings(const Grid& g, const std::vector<double>& u,
                                          double level) {
    double xr = kNaN, xl = kNaN;
    for (int i = g.n() - 2; i >= 0; --i) {
        if (u[i] >= level && u[i + 1] < level) {
            xr = g.x[i] + (level - u[i]) / (u[i + 1] - u[i]) * (g.x[i + 1] - g.x[i]);
            break;
        }
    }
    for (int i = 1; i < g.n(); ++i) {
        if (u[i] >= level && u[i - 1] < level) {
            xl = g.x[i] - (level - u[i]) / (u[i - 1] - u[i]) * (g.x[i] - g.x[i - 1]);
            break;
        }
    }
    return {xr, xl};
}

struct FrontRun {
    GridPtr grid;
    FrontTrace trace;
    SteadyState steady;
    SpeedResult speed;
    // optional stored fields for the wave-shape diagnostics
    std::vector<double> stored_times;
    std::vector<std::vector<double>> stored_fields;
};

FrontRun run_front_simulation(const Landscape& ls, const Reaction& reaction,
                              const SimParams& sim, bool store_late_fields) {
    FrontRun run;
    run.speed = spreading_speed(ls, reaction);
    run.steady = compute_steady_state(ls, reaction, std::max(32, sim.nodes_per_patch));

    const double l = ls.period;
    const double half = 1.5 * run.speed.c_star * sim.T + 4.0 * l;
    const int n_tiles = int(std::ceil(half / l));
    run.grid = build_grid(ls, n_tiles, sim.nodes_per_patch);

    const double level = sim.level.value_or(0.5 * run.steady.min_p);
    run.trace.level = level;

    const double width = sim.bump_width.value_or(2.0 * l);
    const double height = sim.bump_height.value_or(0.9 * run.steady.min_p);
    if (!(width > 0.0) || height < 0.0)
        throw ConfigError("front simulation needs bump width > 0 and height >= 0");
    const double center = sim.bump_center;
    Field f = sample_field(run.grid, [&](double x) {
        if (std::fabs(x - center) > 0.5 * width) return 0.0;
        const double b = height * std::cos(0.5 * 3.14159265358979323846 * (x - center) / (0.5 * width));
        return std::max(0.0, b);
    });
    // the theory wants u0 <= p
    for (int i = 0; i < run.grid->n(); ++i)
        f.values[i] = std::min(f.values[i], periodic_value(run.steady, run.grid->x[i]));

    StepperConfig cfg;
    cfg.dt = sim.dt;
    cfg.scheme = Scheme::ImplicitEulerNewton;

    const double store_dt = std::min(sim.snapshot_dt, 0.05);
    const double store_from = 0.65 * sim.T;
    const long snap_steps = std::max<long>(1, std::lround((store_late_fields ? store_dt : sim.snapshot_dt) / sim.dt));
    const double xmax = run.grid->x.back(), xmin = run.grid->x.front();

    EvolveOptions opts;
    opts.snapshot_every_steps = int(snap_steps);
    opts.on_snapshot = [&](const Field& cur) {
        auto [xr, xl] = level_crossings(*run.grid, cur.values, level);
        run.trace.times.push_back(cur.time);
        run.trace.x_right.push_back(xr);
        run.trace.x_left.push_back(xl);
        if (!std::isnan(xr) && xr > xmax - 2.0 * l)
            throw FrontHitBoundary("rightward front entered the boundary margin");
        if (!std::isnan(xl) && xl < xmin + 2.0 * l)
            throw FrontHitBoundary("leftward front entered the boundary margin");
        if (store_late_fields && cur.time >= store_from - 1e-12) {
            run.stored_times.push_back(cur.time);
            run.stored_fields.push_back(cur.values);
        }
    };
    evolve(f, sim.T, ls, reaction, cfg, opts);

    // fit the last 60% of the horizon
    run.trace.t_transient = 0.4 * sim.T;
    std::vector<double> ts, rs, lsx;
    for (std::size_t i = 0; i < run.trace.times.size(); ++i) {
        if (run.trace.times[i] < run.trace.t_transient) continue;
        if (std::isnan(run.trace.x_right[i]) || std::isnan(run.trace.x_left[i])) continue;
        ts.push_back(run.trace.times[i]);
        rs.push_back(run.trace.x_right[i]);
        lsx.push_back(run.trace.x_left[i]);
    }
    if (ts.size() < 8)
        throw NoCrossingFound("not enough level crossings in the fit window");
    const LineFit fr = fit_line(ts, rs);
    const LineFit fl = fit_line(ts, lsx);
    run.trace.c_right = fr.slope;
    run.trace.c_right_stderr = fr.slope_stderr;
    run.trace.c_left = -fl.slope;
    run.trace.c_left_stderr = fl.slope_stderr;
    return run;
}

} // namespace

FrontTrace measure_front_speed(const Landscape& ls, const Reaction& reaction,
                               const SimParams& sim) {
    return run_front_simulation(ls, reaction, sim, false).trace;
}

PulsatingWaveReport pulsating_wave_check(const Landscape& ls, const Reaction& reaction,
                                         const SimParams& sim) {
    FrontRun run = run_front_simulation(ls, reaction, sim, true);
    PulsatingWaveReport rep;
    rep.c_fitted = run.trace.c_right;
    rep.p_sup = run.steady.max_p;
    if (!(rep.c_fitted > 0.0)) throw NoCrossingFound("fitted speed is not positive");
    const double l = ls.period;
    rep.T_period = l / rep.c_fitted;

    const int shift = 2 * sim.nodes_per_patch; // nodes per period on the tile grid
    const Grid& g = *run.grid;
    const auto& times = run.stored_times;
    const auto& fields = run.stored_fields;
    if (times.size() < 4) throw NoCrossingFound("too few stored snapshots for the wave check");

    auto field_at = [&](double t, std::vector<double>& buf) -> const std::vector<double>& {
        // linear interpolation between stored snapshots
        auto it = std::lower_bound(times.begin(), times.end(), t);
        std::size_t j = std::size_t(it - times.begin());
        if (j == 0) return fields.front();
        if (j >= times.size()) return fields.back();
        const double w = (t - times[j - 1]) / (times[j] - times[j - 1]);
        buf.resize(g.n());
        for (int i = 0; i < g.n(); ++i)
            buf[i] = (1.0 - w) * fields[j - 1][i] + w * fields[j][i];
        return buf;
    };

    std::vector<double> buf;
    double defect = 0.0;
    double mono = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double t = times[j];
        if (t + rep.T_period > times.back()) break;
        auto [xr, xl] = level_crossings(g, fields[j], run.trace.level);
        (void)xl;
        if (std::isnan(xr)) continue;
        const std::vector<double>& later = field_at(t + rep.T_period, buf);
        for (int i = 0; i < g.n() - shift; ++i) {
            const double x = g.x[i];
            if (x < xr - 3.0 * l || x > xr + l) continue;
            defect = std::max(defect, std::fabs(later[i + shift] - fields[j][i]));
        }
        // time-monotonicity behind the front, against the next stored snapshot
        if (j + 1 < times.size()) {
            for (int i = 0; i < g.n(); ++i) {
                const double x = g.x[i];
                if (x < xr - 6.0 * l || x > xr - 2.0 * l) continue;
                mono = std::max(mono, fields[j][i] - fields[j + 1][i]);
            }
        }
    }
    rep.defect = defect;
    rep.monotonicity_defect = mono;
    return rep;
}

} // namespace patchkpp
