#include "patchkpp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>

#include "patchkpp/dynamics.hpp"
#include "patchkpp/eigen.hpp"
#include "patchkpp/steady.hpp"
#include "patchkpp/util.hpp"

namespace patchkpp {

namespace {

double require_positive(const json& block, const std::string& key) {
    if (!block.contains(key) || !block[key].is_number())
        throw ConfigError("missing numeric field '" + key + "'");
    const double v = block[key].get<double>();
    if (!(v > 0.0)) throw NonPositiveParameter("'" + key + "' must be positive");
    return v;
}

std::vector<double> expand_range(const json& r, const std::string& what) {
    if (!r.is_object() || !r.contains("from") || !r.contains("to") || !r.contains("count"))
        throw ConfigError("range '" + what + "' needs {from, to, count}");
    const double from = r["from"].get<double>();
    const double to = r["to"].get<double>();
    const int count = r["count"].get<int>();
    if (count < 1) throw ConfigError("range '" + what + "' needs count >= 1");
    const bool logspaced = r.value("log", false);
    std::vector<double> out;
    for (int i = 0; i < count; ++i) {
        const double t = count == 1 ? 0.0 : double(i) / (count - 1);
        out.push_back(logspaced ? from * std::pow(to / from, t) : from + (to - from) * t);
    }
    return out;
}

} // namespace

RunConfig parse_config(const json& raw) {
    if (!raw.is_object()) throw ConfigError("config must be a JSON object");
    RunConfig cfg;

    if (!raw.contains("landscape") || !raw["landscape"].is_object())
        throw ConfigError("config needs a 'landscape' block");
    const json& L = raw["landscape"];
    const double l1 = require_positive(L, "l1");
    const double l2 = require_positive(L, "l2");
    const double d1 = require_positive(L, "d1");
    const double d2 = require_positive(L, "d2");
    const bool has_alpha = L.contains("alpha");
    const bool has_sigma = L.contains("sigma");
    if (has_alpha == has_sigma)
        throw ConfigError("landscape needs exactly one of 'alpha' or 'sigma'");
    cfg.landscape = has_alpha ? build_landscape(l1, l2, d1, d2, L["alpha"].get<double>())
                              : build_landscape_sigma(l1, l2, d1, d2, L["sigma"].get<double>());

    if (!raw.contains("reaction") || !raw["reaction"].is_object())
        throw ConfigError("config needs a 'reaction' block");
    const json& R = raw["reaction"];
    const std::string kind = R.value("kind", "logistic");
    if (kind != "logistic")
        throw ConfigError("the CLI supports reaction kind 'logistic' (tabulated reactions are a library feature)");
    if (!R.contains("mu1") || !R.contains("mu2"))
        throw ConfigError("logistic reaction needs 'mu1' and 'mu2'");
    cfg.reaction = Reaction::logistic(R["mu1"].get<double>(), R["mu2"].get<double>());

    const json N = raw.value("numerics", json::object());
    cfg.nodes_per_patch = N.value("nodes_per_patch", 32);
    if (cfg.nodes_per_patch < 4) throw ConfigError("nodes_per_patch must be >= 4");
    cfg.numerics.dt = N.value("dt", 5e-3);
    if (!(cfg.numerics.dt > 0.0)) throw NonPositiveParameter("dt must be positive");
    const std::string scheme = N.value("scheme", "implicit_euler");
    if (scheme == "implicit_euler")
        cfg.numerics.scheme = Scheme::ImplicitEulerNewton;
    else if (scheme == "imex")
        cfg.numerics.scheme = Scheme::IMEX;
    else
        throw ConfigError("scheme must be 'implicit_euler' or 'imex'");
    cfg.numerics.newton_tol = N.value("newton_tol", 1e-12);
    cfg.numerics.newton_max_iter = N.value("newton_max_iter", 30);
    cfg.bound_tol = N.value("bound_tol", 1e-6);
    if (!(cfg.bound_tol > 0.0)) throw NonPositiveParameter("bound_tol must be positive");

    cfg.scenario = raw.value("scenario", json::object());
    cfg.seed = raw.value("seed", std::uint64_t(1));

    // resolved echo (re-runnable as a config)
    cfg.resolved = raw;
    cfg.resolved["numerics"] =
        json{{"nodes_per_patch", cfg.nodes_per_patch}, {"dt", cfg.numerics.dt},
             {"scheme", scheme},  {"newton_tol", cfg.numerics.newton_tol},
             {"newton_max_iter", cfg.numerics.newton_max_iter},
             {"bound_tol", cfg.bound_tol}};
    cfg.resolved["scenario"] = cfg.scenario;
    cfg.resolved["seed"] = cfg.seed;
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    return parse_config(load_json(path));
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const std::filesystem::path& outdir) {
    json m = cfg.resolved;
    m["manifest"] = json{{"command", command}, {"version", kVersion}};
    save_json(outdir / "manifest.json", m);
}

// ---------------------------------------------------------------------------

void run_eigen(const RunConfig& cfg, const std::filesystem::path& outdir) {
    const Landscape& ls = cfg.landscape;
    const Reaction& r = cfg.reaction;
    write_manifest(cfg, "eigen", outdir);

    const EigenResult disp = lambda1_dispersion(ls, r);
    const EigenResult grid = lambda1_grid(ls, r, cfg.nodes_per_patch);
    // the 1e-6 agreement gate needs the O(h^4) extrapolation remainder to be
    // well below it, which asks for at least 128 nodes per patch
    const double grid_extrap =
        lambda1_grid_richardson(ls, r, std::max(128, cfg.nodes_per_patch));
    const MuFamilySample transfer = lambda_mu_transfer(ls, r, 0.0);

    const double scale = std::max(1.0, std::fabs(disp.lambda));
    if (std::fabs(grid_extrap - disp.lambda) > 1e-6 * scale ||
        std::fabs(transfer.lambda - disp.lambda) > 1e-6 * scale)
        throw MethodsDisagree("lambda_1 cross-method disagreement beyond 1e-6");

    json out{{"lambda1_dispersion", disp.lambda},
             {"lambda1_grid", grid.lambda},
             {"lambda1_grid_extrapolated", grid_extrap},
             {"lambda1_transfer", transfer.lambda},
             {"dispersion_residual", disp.residual},
             {"grid_residual", grid.residual},
             {"sigma", ls.sigma},
             {"k", ls.k},
             {"period", ls.period}};

    std::vector<double> r_over_l = {1, 2, 5, 10, 40};
    if (cfg.scenario.contains("dirichlet_R_over_l"))
        r_over_l = cfg.scenario["dirichlet_R_over_l"].get<std::vector<double>>();
    json ladder = json::array();
    std::vector<double> ladder_vals(r_over_l.size());
    parallel_for(int(r_over_l.size()), [&](int i) {
        ladder_vals[i] =
            lambda_dirichlet(ls, r, r_over_l[i] * ls.period, 0.0, cfg.nodes_per_patch).lambda;
    });
    for (std::size_t i = 0; i < r_over_l.size(); ++i)
        ladder.push_back(json{{"R", r_over_l[i] * ls.period}, {"lambda", ladder_vals[i]}});
    out["dirichlet_ladder"] = ladder;

    if (r.f1_prime0() > 0.0 && r.f2_prime0() < 0.0) {
        const CriticalLengths cl = critical_patch_length(ls, r);
        out["l1c"] = cl.l1c;
        out["L1c"] = cl.L1c;
        if (cl.f2prime_c)
            out["f2prime_critical"] = *cl.f2prime_c;
        else
            out["f2prime_critical"] = nullptr;
    }
    save_json(outdir / "eigen.json", out);

    if (cfg.scenario.contains("sigma_sweep")) {
        const std::vector<double> sigmas = expand_range(cfg.scenario["sigma_sweep"], "sigma_sweep");
        std::vector<double> lams(sigmas.size());
        parallel_for(int(sigmas.size()), [&](int i) {
            const Landscape lsi = build_landscape_sigma(ls.l1, ls.l2, ls.d1, ls.d2, sigmas[i]);
            lams[i] = lambda1_dispersion(lsi, r).lambda;
        });
        CsvWriter csv(outdir / "lambda_vs_sigma.csv", "sigma,lambda1");
        for (std::size_t i = 0; i < sigmas.size(); ++i) csv.row({sigmas[i], lams[i]});
    }
}

void run_speed(const RunConfig& cfg, const std::filesystem::path& outdir) {
    const Landscape& ls = cfg.landscape;
    const Reaction& r = cfg.reaction;
    write_manifest(cfg, "speed", outdir);

    const SpeedResult sp = spreading_speed(ls, r);

    json out{{"c_star", sp.c_star},
             {"mu_star", sp.mu_star},
             {"lambda1", sp.lambda1},
             {"lambda_at_mu_star", sp.lambda_at_mu_star},
             {"c_star_left", sp.c_star_left},
             {"stationarity", sp.stationarity},
             {"c_fitted_right", nullptr},
             {"c_fitted_left", nullptr},
             {"rel_err", nullptr}};

    if (cfg.scenario.value("validate", false)) {
        SimParams sim;
        sim.T = cfg.scenario.value("T", 60.0);
        sim.dt = cfg.numerics.dt;
        sim.nodes_per_patch = cfg.nodes_per_patch;
        if (cfg.scenario.contains("level")) sim.level = cfg.scenario["level"].get<double>();
        const FrontTrace tr = measure_front_speed(ls, r, sim);
        out["c_fitted_right"] = tr.c_right;
        out["c_fitted_left"] = tr.c_left;
        out["rel_err"] = std::fabs(tr.c_right - sp.c_star) / sp.c_star;
        CsvWriter csv(outdir / "front_trace.csv", "t,x_front_right,x_front_left");
        for (std::size_t i = 0; i < tr.times.size(); ++i)
            csv.row({tr.times[i], tr.x_right[i], tr.x_left[i]});
    }
    save_json(outdir / "speed.json", out);

    std::vector<SpeedSample> tab = sp.samples;
    std::sort(tab.begin(), tab.end(),
              [](const SpeedSample& a, const SpeedSample& b) { return a.mu < b.mu; });
    CsvWriter csv(outdir / "phi_of_mu.csv", "mu,lambda,phi");
    double last_mu = std::nan("");
    for (const SpeedSample& s : tab) {
        if (s.mu == last_mu) continue;
        last_mu = s.mu;
        csv.row({s.mu, s.lambda, s.phi});
    }
}

namespace {

std::function<double(double)> make_initial(const json& init, const Landscape& ls) {
    const std::string type = init.value("type", "bump");
    if (type == "bump") {
        const double center = init.value("center", 0.0);
        const double width = init.value("width", 2.0 * ls.period);
        const double height = init.value("height", 0.5);
        if (!(width > 0.0) || !(height >= 0.0))
            throw ConfigError("bump needs width > 0 and height >= 0");
        return [center, width, height](double x) {
            if (std::fabs(x - center) > 0.5 * width) return 0.0;
            return height * 0.5 * (1.0 + std::cos(2.0 * 3.14159265358979323846 * (x - center) / width));
        };
    }
    if (type == "constant") {
        const double v = init.value("value", 0.0);
        if (v < 0.0) throw NegativeInitialData("constant initial value must be >= 0");
        return [v](double) { return v; };
    }
    if (type == "periodic") {
        if (!init.contains("samples") || !init["samples"].is_array() || init["samples"].size() < 2)
            throw ConfigError("periodic initial data needs a 'samples' array (>= 2 values)");
        const std::vector<double> samples = init["samples"].get<std::vector<double>>();
        for (double s : samples)
            if (s < 0.0) throw NegativeInitialData("periodic samples must be >= 0");
        const double l = ls.period;
        return [samples, l](double x) {
            double t = std::fmod(x, l);
            if (t < 0) t += l;
            const double pos = t / l * double(samples.size());
            const std::size_t i = std::size_t(pos) % samples.size();
            const std::size_t j = (i + 1) % samples.size();
            const double w = pos - std::floor(pos);
            return (1.0 - w) * samples[i] + w * samples[j];
        };
    }
    if (type == "file") {
        if (!init.contains("path")) throw ConfigError("file initial data needs 'path'");
        const auto rows = load_xy_csv(init["path"].get<std::string>());
        return [rows](double x) {
            if (x <= rows.front().first) return std::max(0.0, rows.front().second);
            if (x >= rows.back().first) return std::max(0.0, rows.back().second);
            auto it = std::lower_bound(rows.begin(), rows.end(), std::make_pair(x, -1e300));
            const auto [x1, u1] = *it;
            const auto [x0, u0] = *(it - 1);
            const double w = (x - x0) / (x1 - x0);
            return std::max(0.0, (1.0 - w) * u0 + w * u1);
        };
    }
    throw ConfigError("initial type must be bump|constant|periodic|file");
}

void write_state_csv(CsvWriter& csv, const Field& f, const Landscape& ls, bool with_time) {
    const Grid& g = *f.grid;
    const PhysicalField v = rescale_continuous_to_physical(f, ls);
    for (int i = 0; i < g.n(); ++i) {
        const double ptype =
            g.kind[i] == NodeKind::Interior ? double(g.patch_of_node[i]) : 0.0;
        if (with_time)
            csv.row({f.time, g.x[i], f.values[i], v.values[i], ptype});
        else
            csv.row({g.x[i], f.values[i], v.values[i], ptype});
    }
}

} // namespace

void run_simulate(const RunConfig& cfg, const std::filesystem::path& outdir) {
    const Landscape& ls = cfg.landscape;
    const Reaction& r = cfg.reaction;
    write_manifest(cfg, "simulate", outdir);

    const json& sc = cfg.scenario;
    const double T = sc.value("T", 10.0);
    if (!(T > 0.0)) throw ConfigError("scenario.T must be positive");
    const int n_tiles = sc.value("n_tiles", 8);
    const double snapshot_dt = sc.value("snapshot_dt", std::max(cfg.numerics.dt, T / 40.0));
    const json init = sc.value("initial", json{{"type", "bump"}});

    auto grid = build_grid(ls, n_tiles, cfg.nodes_per_patch);
    Field f = apply_cutoff(make_initial(init, ls), grid, ls);

    const bool track_front = sc.value("track_front", true);
    double level = sc.value("level", 0.0);
    if (track_front && level <= 0.0) {
        // default level: half the smallest steady-state value if persistent,
        // otherwise half the initial sup
        const double lam1 = lambda1_dispersion(ls, r).lambda;
        if (lam1 < 0.0)
            level = 0.5 * compute_steady_state(ls, r, cfg.nodes_per_patch).min_p;
        else
            level = 0.5 * *std::max_element(f.values.begin(), f.values.end());
    }

    CsvWriter traj(outdir / "trajectory.csv", "t,x,u,v,patch_type");
    CsvWriter front(outdir / "front_trace.csv", "t,x_front_right,x_front_left");

    EvolveOptions opts;
    opts.bound_tol = cfg.bound_tol;
    opts.snapshot_every_steps = std::max(1, int(std::lround(snapshot_dt / cfg.numerics.dt)));
    opts.on_snapshot = [&](const Field& cur) {
        write_state_csv(traj, cur, ls, true);
        if (track_front) {
            double xr = std::nan(""), xl = std::nan("");
            for (int i = cur.grid->n() - 2; i >= 0; --i)
                if (cur.values[i] >= level && cur.values[i + 1] < level) {
                    xr = cur.grid->x[i] + (level - cur.values[i]) /
                                              (cur.values[i + 1] - cur.values[i]) *
                                              (cur.grid->x[i + 1] - cur.grid->x[i]);
                    break;
                }
            for (int i = 1; i < cur.grid->n(); ++i)
                if (cur.values[i] >= level && cur.values[i - 1] < level) {
                    xl = cur.grid->x[i] - (level - cur.values[i]) /
                                              (cur.values[i - 1] - cur.values[i]) *
                                              (cur.grid->x[i] - cur.grid->x[i - 1]);
                    break;
                }
            front.row({cur.time, xr, xl});
        }
    };
    evolve(f, T, ls, r, cfg.numerics, opts);

    CsvWriter final_csv(outdir / "final_state.csv", "x,u,v,patch_type");
    write_state_csv(final_csv, f, ls, false);

    json summary{{"final_time", f.time},
                 {"final_sup", *std::max_element(f.values.begin(), f.values.end())}};
    if (init.value("type", "bump") == "periodic") {
        // interior periodicity defect, inside the margin-rule region
        const int shift = 2 * cfg.nodes_per_patch;
        const double margin =
            4.0 * std::sqrt(std::max(ls.d1, ls.d2) * T) + 2.0 * ls.period;
        double defect = 0.0;
        for (int i = 0; i < grid->n() - shift; ++i) {
            if (std::fabs(grid->x[i]) > n_tiles * ls.period - margin - ls.period) continue;
            defect = std::max(defect, std::fabs(f.values[i + shift] - f.values[i]));
        }
        summary["periodicity_defect"] = defect;
    }
    save_json(outdir / "summary.json", summary);

    if (sc.value("properties", false)) {
        // quick ordered-pair / subhomogeneity check on this configuration
        json props;
        auto grid2 = build_grid(ls, std::min(n_tiles, 4), cfg.nodes_per_patch);
        Field a = apply_cutoff(make_initial(init, ls), grid2, ls);
        Field b = a;
        for (double& v : b.values) v = std::min(v + 0.1, r.cap());
        const double horizon = std::min(T, 2.0);
        evolve(a, horizon, ls, r, cfg.numerics);
        evolve(b, horizon, ls, r, cfg.numerics);
        double worst = 0.0;
        for (int i = 0; i < grid2->n(); ++i) worst = std::max(worst, a.values[i] - b.values[i]);
        props["comparison_defect"] = worst;
        props["comparison_pass"] = worst <= 1e-10;

        double sub_worst = 0.0;
        for (double gamma : {0.25, 0.5, 0.9}) {
            Field c = apply_cutoff(make_initial(init, ls), grid2, ls);
            Field d = c;
            for (double& v : d.values) v *= gamma;
            evolve(c, horizon, ls, r, cfg.numerics);
            evolve(d, horizon, ls, r, cfg.numerics);
            for (int i = 0; i < grid2->n(); ++i)
                sub_worst = std::max(sub_worst, gamma * c.values[i] - d.values[i]);
        }
        props["subhomogeneity_defect"] = sub_worst;
        props["subhomogeneity_pass"] = sub_worst <= 1e-9;
        save_json(outdir / "properties.json", props);
    }
}

void run_steady(const RunConfig& cfg, const std::filesystem::path& outdir) {
    const Landscape& ls = cfg.landscape;
    const Reaction& r = cfg.reaction;
    write_manifest(cfg, "steady", outdir);

    const SteadyState st = compute_steady_state(ls, r, cfg.nodes_per_patch);
    json out{{"exists", st.exists},        {"lambda1", st.lambda1},
             {"near_critical", st.near_critical}, {"residual", st.residual},
             {"min_p", st.min_p},          {"max_p", st.max_p}};

    if (st.exists) {
        CsvWriter csv(outdir / "steady_profile.csv", "x,p,patch_type");
        const Grid& g = *st.grid;
        for (int i = 0; i < g.n(); ++i) {
            const double ptype =
                g.kind[i] == NodeKind::Interior ? double(g.patch_of_node[i]) : 0.0;
            csv.row({g.x[i], st.p[i], ptype});
        }
        if (cfg.scenario.value("verify_uniqueness", false)) {
            const UniquenessReport rep = verify_uniqueness(st, ls, r, cfg.seed);
            out["uniqueness"] = json{{"max_pairwise_diff", rep.max_pairwise_diff},
                                     {"monotone_from_above", rep.monotone_from_above},
                                     {"monotone_from_below", rep.monotone_from_below},
                                     {"kappa", rep.kappa}};
        }
    }
    save_json(outdir / "steady.json", out);
}

void run_persistence_map(const RunConfig& cfg, const std::filesystem::path& outdir) {
    const Landscape& ls = cfg.landscape;
    const Reaction& r = cfg.reaction;
    write_manifest(cfg, "persistence-map", outdir);

    const json& sc = cfg.scenario;
    if (!sc.contains("l1")) throw ConfigError("persistence-map needs scenario.l1 range");
    const std::vector<double> l1s = expand_range(sc["l1"], "l1");
    const bool by_f2 = sc.contains("f2prime");
    const bool by_l2 = sc.contains("l2");
    if (by_f2 == by_l2)
        throw ConfigError("persistence-map needs exactly one of scenario.f2prime / scenario.l2");
    const std::vector<double> other =
        expand_range(by_f2 ? sc["f2prime"] : sc["l2"], by_f2 ? "f2prime" : "l2");

    struct Cell {
        double l1, other, lambda1, l1c;
    };
    std::vector<Cell> cells(l1s.size() * other.size());
    parallel_for(int(cells.size()), [&](int idx) {
        const std::size_t i = idx % l1s.size();
        const std::size_t j = idx / l1s.size();
        const double l1 = l1s[i];
        const double ov = other[j];
        const Landscape lsc = build_landscape(l1, by_l2 ? ov : ls.l2, ls.d1, ls.d2, ls.alpha);
        const Reaction rc = by_f2 ? Reaction::logistic(r.mu1(), ov) : r;
        Cell c{l1, ov, lambda1_dispersion(lsc, rc).lambda, std::nan("")};
        if (rc.f1_prime0() > 0.0 && rc.f2_prime0() < 0.0)
            c.l1c = critical_patch_length(lsc, rc).l1c;
        cells[idx] = c;
    });

    CsvWriter csv(outdir / "persistence_map.csv",
                  std::string("l1,") + (by_f2 ? "f2prime" : "l2") + ",lambda1,persistent,l1c");
    for (const Cell& c : cells)
        csv.row({c.l1, c.other, c.lambda1, c.lambda1 < 0.0 ? 1.0 : 0.0, c.l1c});
}

int run_selftest(const RunConfig& cfg, const std::filesystem::path& outdir) {
    (void)outdir;
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        if (!ok) ++failures;
    };
    // homogeneous speed
    {
        const Landscape h = build_landscape(1, 1, 1, 1, 0.5);
        const Reaction r = Reaction::logistic(1.0, 1.0);
        const SpeedResult sp = spreading_speed(h, r);
        check(std::fabs(sp.c_star - 2.0) < 1e-8 && std::fabs(sp.mu_star - 1.0) < 1e-6,
              "homogeneous KPP speed c*=2, mu*=1");
    }
    // cross-method eigenvalue on the configured landscape
    {
        const double disp = lambda1_dispersion(cfg.landscape, cfg.reaction).lambda;
        const double grid = lambda1_grid_richardson(cfg.landscape, cfg.reaction,
                                                     std::max(128, cfg.nodes_per_patch));
        check(std::fabs(disp - grid) < 1e-6 * std::max(1.0, std::fabs(disp)),
              "dispersion vs grid eigenvalue");
    }
    // comparison principle on a small window
    {
        auto grid = build_grid(cfg.landscape, 2, 16);
        const Landscape& lsl = cfg.landscape;
        Field a = apply_cutoff([](double x) { return 0.2 * std::exp(-x * x); }, grid, lsl);
        Field b = apply_cutoff([](double x) { return 0.2 * std::exp(-x * x) + 0.05; }, grid, lsl);
        StepperConfig scfg;
        scfg.dt = 5e-3;
        evolve(a, 0.5, cfg.landscape, cfg.reaction, scfg);
        evolve(b, 0.5, cfg.landscape, cfg.reaction, scfg);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            worst = std::max(worst, a.values[i] - b.values[i]);
        check(worst <= 1e-10, "comparison principle (ordered data stay ordered)");
    }
    return failures == 0 ? 0 : 4;
}

int dispatch(const std::string& command, const std::filesystem::path& config_path,
             const std::filesystem::path& outdir, std::uint64_t seed_override,
             bool has_seed_override) {
    try {
        RunConfig cfg = load_config(config_path);
        if (has_seed_override) {
            cfg.seed = seed_override;
            cfg.resolved["seed"] = cfg.seed;
        }
        std::filesystem::create_directories(outdir);
        if (command == "eigen")
            run_eigen(cfg, outdir);
        else if (command == "speed")
            run_speed(cfg, outdir);
        else if (command == "simulate")
            run_simulate(cfg, outdir);
        else if (command == "steady")
            run_steady(cfg, outdir);
        else if (command == "persistence-map")
            run_persistence_map(cfg, outdir);
        else if (command == "selftest")
            return run_selftest(cfg, outdir);
        else
            throw ConfigError("unknown command '" + command + "'");
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition not met: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 4;
    }
}

} // namespace patchkpp
