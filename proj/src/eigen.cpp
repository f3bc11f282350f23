#include "patchkpp/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "patchkpp/linalg.hpp"

namespace patchkpp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// cos(sqrt(q) t) for q > 0, cosh(sqrt(-q) t) for q < 0, series near 0
double chq(double q, double t) {
    const double z = q * t * t;
    if (std::fabs(z) < 1e-10)
        return 1.0 - z / 2.0 + z * z / 24.0;
    if (q > 0.0) return std::cos(std::sqrt(q) * t);
    return std::cosh(std::sqrt(-q) * t);
}

// sin(sqrt(q) t)/sqrt(q) resp. sinh(sqrt(-q) t)/sqrt(-q)
double shq(double q, double t) {
    const double z = q * t * t;
    if (std::fabs(z) < 1e-10)
        return t * (1.0 - z / 6.0 + z * z / 120.0);
    if (q > 0.0) {
        const double w = std::sqrt(q);
        return std::sin(w * t) / w;
    }
    const double s = std::sqrt(-q);
    return std::sinh(s * t) / s;
}

// d/dt chq(q, t) = -q * shq(q, t)
double dchq(double q, double t) { return -q * shq(q, t); }

double bisect(const std::function<double(double)>& g, double lo, double hi, double glo) {
    double ghi = g(hi);
    (void)ghi;
    for (int it = 0; it < 300 && (hi - lo) > 1e-16 * (1.0 + std::fabs(lo) + std::fabs(hi));
         ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

Mat2 patch_propagator(double q, double mu, double L) {
    // companion system of psi'' = 2 mu psi' - (mu^2 + q) psi has
    // (A - mu I)^2 = -q I, so exp(L A) = e^{mu L} (ch I + shs (A - mu I))
    const double e = std::exp(mu * L);
    const double ch = chq(q, L);
    const double shs = shq(q, L);
    return {e * (ch - mu * shs), e * shs,
            e * (-(mu * mu + q) * shs), e * (ch + mu * shs)};
}

Mat2 jump_s1(double mu, double sigma) {
    return {1.0, 0.0, mu * (1.0 - 1.0 / sigma), 1.0 / sigma};
}

Mat2 jump_s2(double mu, double sigma) {
    return {1.0, 0.0, mu * (1.0 - sigma), sigma};
}

Mat2 monodromy(const Landscape& ls, const Reaction& reaction, double mu, double lambda) {
    const double q1 = (reaction.f1_prime0() + lambda) / ls.d1;
    const double q2 = (reaction.f2_prime0() + lambda) / ls.d2;
    const Mat2 p2 = patch_propagator(q2, mu, ls.l2);
    const Mat2 p1 = patch_propagator(q1, mu, ls.l1);
    const Mat2 j2 = jump_s2(mu, ls.sigma);
    const Mat2 j1 = jump_s1(mu, ls.sigma);
    return mat2_mul(j1, mat2_mul(p1, mat2_mul(j2, p2)));
}

// ---------------------------------------------------------------------------
// dispersion relation
// ---------------------------------------------------------------------------

EigenResult lambda1_dispersion(const Landscape& ls, const Reaction& reaction,
                               int samples_per_patch) {
    const double f1p = reaction.f1_prime0();
    const double f2p = reaction.f2_prime0();
    if (!(f1p >= f2p))
        throw DegenerateRates("dispersion relation requires f1'(0) >= f2'(0)");

    EigenResult res;
    res.method = EigenMethod::DispersionRoot;

    const int spp = std::max(4, samples_per_patch);
    auto sample_phi = [&](double lambda) {
        const double q1 = (f1p + lambda) / ls.d1;
        const double q2 = (f2p + lambda) / ls.d2;
        const double B = chq(q1, 0.5 * ls.l1) / chq(q2, 0.5 * ls.l2);
        res.x.clear();
        res.phi.clear();
        for (int j = 0; j < spp; ++j) { // type-2 patch [0, l2)
            const double x = ls.l2 * j / spp;
            res.x.push_back(x);
            res.phi.push_back(B * chq(q2, x - 0.5 * ls.l2));
        }
        for (int j = 0; j < spp; ++j) { // type-1 patch [l2, l)
            const double x = ls.l2 + ls.l1 * j / spp;
            res.x.push_back(x);
            res.phi.push_back(chq(q1, x - ls.l2 - 0.5 * ls.l1));
        }
        double mx = 0.0;
        for (double v : res.phi) mx = std::max(mx, std::fabs(v));
        for (double& v : res.phi) v /= mx;
    };

    if (f1p == f2p) {
        // equal linear rates force the constant eigenfunction
        res.lambda = -f1p;
        sample_phi(res.lambda);
        res.residual = 0.0;
        return res;
    }

    // g(lambda) = lhs - rhs, increasing; tan argument clamped to its
    // principal branch
    auto g = [&](double lambda) {
        const double q1 = (f1p + lambda) / ls.d1;
        const double q2 = (f2p + lambda) / ls.d2;
        const double w1 = std::sqrt(std::max(q1, 0.0));
        double arg = w1 * 0.5 * ls.l1;
        arg = std::min(arg, 0.5 * kPi - 1e-12);
        const double lhs = w1 * std::tan(arg);
        const double m2 = std::sqrt(std::max(-q2, 0.0));
        const double rhs = ls.sigma * m2 * std::tanh(m2 * 0.5 * ls.l2);
        return lhs - rhs;
    };

    const double lo = -f1p;
    const double hi = std::min(-f2p, ls.d1 * (kPi / ls.l1) * (kPi / ls.l1) - f1p);
    const double glo = g(lo);
    const double ghi = g(hi - 1e-13 * (1.0 + std::fabs(hi)));
    if (!(glo <= 0.0) || !(ghi >= 0.0))
        throw NoRootInBracket("dispersion function does not change sign on the bracket");
    res.lambda = bisect(g, lo, hi, glo);

    sample_phi(res.lambda);

    // residual: dispersion defect plus the two interface-flux defects of
    // the reconstructed eigenfunction
    const double q1 = (f1p + res.lambda) / ls.d1;
    const double q2 = (f2p + res.lambda) / ls.d2;
    const double B = chq(q1, 0.5 * ls.l1) / chq(q2, 0.5 * ls.l2);
    const double flux_s1 = dchq(q1, 0.5 * ls.l1) - ls.sigma * B * dchq(q2, -0.5 * ls.l2);
    const double flux_s2 = ls.sigma * B * dchq(q2, 0.5 * ls.l2) - dchq(q1, -0.5 * ls.l1);
    res.residual = std::max({std::fabs(g(res.lambda)), std::fabs(flux_s1), std::fabs(flux_s2)});
    return res;
}

// ---------------------------------------------------------------------------
// transfer-matrix monodromy
// ---------------------------------------------------------------------------

namespace {

// eigenvector of the mu=0 monodromy for the Bloch multiplier rho, from the
// better-conditioned row of M - rho I
bool bloch_eigvec(const Mat2& m, double rho, double y[2]) {
    const double a = m[0] - rho, b = m[1];
    const double c = m[2], d = m[3] - rho;
    const double n1 = std::hypot(a, b), n2 = std::hypot(c, d);
    if (n1 >= n2) {
        y[0] = -b;
        y[1] = a;
    } else {
        y[0] = d;
        y[1] = -c;
    }
    const double n = std::hypot(y[0], y[1]);
    if (n == 0.0) return false;
    y[0] /= n;
    y[1] /= n;
    if (y[0] < 0.0) {
        y[0] = -y[0];
        y[1] = -y[1];
    }
    return y[0] > 0.0;
}

// propagate the Bloch eigenvector through the period with the drift-free
// system and sample psi(x) = e^{mu x} w(x), the periodic E_mu eigenfunction
bool sample_psi(const Landscape& ls, const Reaction& r, double mu, double lambda,
                const double y0[2], int spp, std::vector<double>* xs,
                std::vector<double>* psi) {
    const double q1 = (r.f1_prime0() + lambda) / ls.d1;
    const double q2 = (r.f2_prime0() + lambda) / ls.d2;
    bool positive = true;
    if (xs) {
        xs->clear();
        psi->clear();
    }
    auto emit = [&](double x, double w) {
        if (w <= 0.0) positive = false;
        if (xs) {
            xs->push_back(x);
            psi->push_back(std::exp(mu * x) * w);
        }
    };
    for (int j = 0; j < spp; ++j) {
        const double t = ls.l2 * j / spp;
        const Mat2 p = patch_propagator(q2, 0.0, t);
        emit(t, p[0] * y0[0] + p[1] * y0[1]);
    }
    Mat2 p_full = patch_propagator(q2, 0.0, ls.l2);
    double y1[2] = {p_full[0] * y0[0] + p_full[1] * y0[1],
                    p_full[2] * y0[0] + p_full[3] * y0[1]};
    const Mat2 j2 = jump_s2(0.0, ls.sigma);
    double y2[2] = {j2[0] * y1[0] + j2[1] * y1[1], j2[2] * y1[0] + j2[3] * y1[1]};
    for (int j = 0; j < spp; ++j) {
        const double t = ls.l1 * j / spp;
        const Mat2 p = patch_propagator(q1, 0.0, t);
        emit(ls.l2 + t, p[0] * y2[0] + p[1] * y2[1]);
    }
    return positive;
}

} // namespace

MuFamilySample lambda_mu_transfer(const Landscape& ls, const Reaction& reaction, double mu,
                                  int samples_per_patch) {
    const double f1p = reaction.f1_prime0();
    const double f2p = reaction.f2_prime0();
    const double dmax = std::max(ls.d1, ls.d2);

    // The substitution psi = e^{mu x} w strips the drift: w solves the mu=0
    // equation with the plain interface conditions and the Bloch closure
    // w(x+l) = e^{-mu l} w(x). Since det M0 = 1, the condition
    // det(M0(lambda) - e^{-mu l} I) = 0 collapses to the discriminant
    // equation tr M0(lambda) = 2 cosh(mu l), which is free of the e^{mu l}
    // amplification that makes the drifted det ill-conditioned at large mu.
    const double target = 2.0 * std::cosh(mu * ls.period);
    auto g = [&](double lambda) {
        const Mat2 m = monodromy(ls, reaction, 0.0, lambda);
        return m[0] + m[3] - target;
    };
    const double rho = std::exp(-mu * ls.period);

    double floor0 = -std::max(f1p, f2p) - dmax * mu * mu - 1.0;
    double ceil0 = -f2p + 1.0;

    for (int attempt = 0; attempt < 2; ++attempt) {
        const double width = ceil0 - floor0;
        const int nsteps = attempt == 0 ? 20 : 200; // 0.05*width, refined on retry
        double prev = floor0;
        double gprev = g(prev);
        for (int kstep = 1; kstep <= nsteps; ++kstep) {
            const double cur = floor0 + width * kstep / nsteps;
            const double gcur = g(cur);
            if ((gprev < 0.0) != (gcur < 0.0)) {
                const double root = bisect(g, prev, cur, gprev);
                const Mat2 m = monodromy(ls, reaction, 0.0, root);
                double y0[2];
                if (bloch_eigvec(m, rho, y0) &&
                    sample_psi(ls, reaction, mu, root, y0, 16, nullptr, nullptr)) {
                    MuFamilySample out;
                    out.mu = mu;
                    out.lambda = root;
                    sample_psi(ls, reaction, mu, root, y0, std::max(4, samples_per_patch),
                               &out.x, &out.psi);
                    double mx = 0.0;
                    for (double v : out.psi) mx = std::max(mx, v);
                    for (double& v : out.psi) v /= mx;
                    const double closure =
                        std::hypot(m[0] * y0[0] + m[1] * y0[1] - rho * y0[0],
                                   m[2] * y0[0] + m[3] * y0[1] - rho * y0[1]);
                    out.residual = std::max(std::fabs(g(root)), closure);
                    return out;
                }
                // wrong branch: keep scanning above this root
            }
            prev = cur;
            gprev = gcur;
        }
        // widen once and rescan with finer steps
        floor0 -= width;
        ceil0 += 1.0;
    }
    throw BranchSelectionFailed("no principal root of the monodromy discriminant in bracket");
}

// ---------------------------------------------------------------------------
// grid discretization
// ---------------------------------------------------------------------------

namespace {

// Row-wise assembly of the drifted operator with discrete E_mu interface
// conditions. set(i, j, v) accumulates into the target matrix.
template <typename Setter>
void assemble_rows(const Grid& g, const Landscape& ls, const Reaction& r, double mu,
                   std::vector<double>& Bdiag, Setter&& set) {
    const int n = g.n();
    Bdiag.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        switch (g.kind[i]) {
            case NodeKind::Boundary:
                set(i, i, 1.0);
                break;
            case NodeKind::Interior: {
                const int pt = g.patch_of_node[i];
                const double d = ls.diffusivity(pt);
                const double h = g.h_left[i]; // == h_right within a patch
                const double fp = r.fprime0(pt);
                set(i, g.left(i), -d / (h * h) - d * mu / h);
                set(i, i, 2.0 * d / (h * h) - (d * mu * mu + fp));
                set(i, g.right(i), -d / (h * h) + d * mu / h);
                Bdiag[i] = 1.0;
                break;
            }
            case NodeKind::InterfaceS1:
            case NodeKind::InterfaceS2: {
                const bool s1 = g.kind[i] == NodeKind::InterfaceS1;
                const double hL = g.h_left[i];
                const double hR = g.h_right[i];
                // [-mu u + u'](x-) with a 3-point one-sided stencil, times wl;
                // minus the same from the right, times wr
                const double wl = s1 ? 1.0 : ls.sigma;
                const double wr = s1 ? ls.sigma : 1.0;
                const int il = g.left(i), ill = g.left(il);
                const int ir = g.right(i), irr = g.right(ir);
                set(i, i, wl * (-mu + 1.5 / hL) + wr * (mu + 1.5 / hR));
                set(i, il, -2.0 * wl / hL);
                set(i, ill, 0.5 * wl / hL);
                set(i, ir, -2.0 * wr / hR);
                set(i, irr, 0.5 * wr / hR);
                break;
            }
        }
    }
}

struct PencilEig {
    double lambda;
    std::vector<double> vec;
    double residual;
};

// Shifted inverse power iteration on the pencil A x = lambda B x, followed
// by Rayleigh-shift refinement. Factor/solve are provided by the caller so
// the same driver serves the dense periodic and banded window paths.
template <typename MultA, typename Factor, typename Solve>
PencilEig pencil_principal(int n, const std::vector<double>& Bdiag, double shift, MultA&& multA,
                           Factor&& factor, Solve&& solve, const std::vector<bool>& is_boundary) {
    std::vector<double> x(n, 1.0), y(n), ax(n);
    for (int i = 0; i < n; ++i)
        if (is_boundary[i]) x[i] = 0.0;

    auto normalize = [&](std::vector<double>& v) {
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
        const double piv = v[imax];
        if (piv == 0.0) throw IterationDiverged("inverse iteration produced the zero vector");
        for (double& vi : v) vi /= piv;
    };

    auto rayleigh = [&](const std::vector<double>& v) {
        multA(v, ax);
        double num = 0.0, den = 0.0;
        for (int i = 0; i < n; ++i) {
            if (Bdiag[i] == 0.0) continue;
            num += ax[i] * v[i];
            den += v[i] * v[i];
        }
        return num / den;
    };

    factor(shift);
    double lambda = shift;
    bool converged = false;
    for (int it = 0; it < 200; ++it) {
        for (int i = 0; i < n; ++i) y[i] = Bdiag[i] * x[i];
        solve(y);
        normalize(y);
        double diff = 0.0;
        for (int i = 0; i < n; ++i) diff = std::max(diff, std::fabs(y[i] - x[i]));
        x = y;
        lambda = rayleigh(x);
        if (diff < 1e-10) {
            converged = true;
            break;
        }
    }
    // Rayleigh-shift refinement; quadratic, handles tight eigenvalue gaps.
    // Near-singular solves leave a roundoff floor of ~1e-12 in the iterate,
    // so stagnating updates below 1e-13 count as converged.
    int calm = 0;
    for (int it = 0; it < 12; ++it) {
        double s = lambda;
        for (int nudge = 0; nudge < 4; ++nudge) {
            try {
                factor(s);
                break;
            } catch (const LinearSolveFailed&) {
                s += (1e-9 + std::fabs(lambda) * 1e-10) * (nudge + 1);
            }
        }
        for (int i = 0; i < n; ++i) y[i] = Bdiag[i] * x[i];
        solve(y);
        normalize(y);
        double diff = 0.0;
        for (int i = 0; i < n; ++i) diff = std::max(diff, std::fabs(y[i] - x[i]));
        x = y;
        const double lnew = rayleigh(x);
        const double dl = std::fabs(lnew - lambda);
        lambda = lnew;
        calm = dl < 1e-13 * std::max(1.0, std::fabs(lambda)) ? calm + 1 : 0;
        if (diff < 5e-12 || calm >= 2) {
            converged = true;
            break;
        }
    }
    if (!converged) throw IterationDiverged("eigenvalue iteration did not converge");

    // orient: sup-normalize with positive maximal entry
    double mx = 0.0;
    int imax = 0;
    for (int i = 0; i < n; ++i)
        if (std::fabs(x[i]) > mx) {
            mx = std::fabs(x[i]);
            imax = i;
        }
    const double sgn = x[imax] > 0.0 ? 1.0 : -1.0;
    for (double& v : x) v = sgn * v / mx;

    for (int i = 0; i < n; ++i)
        if (!is_boundary[i] && !(x[i] > 0.0))
            throw NonPositiveEigenvector("iteration captured a sign-changing eigenvector");

    multA(x, ax);
    double resid = 0.0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::fabs(ax[i] - lambda * Bdiag[i] * x[i]));

    return {lambda, std::move(x), resid};
}

PencilEig periodic_principal(const Grid& g, const Landscape& ls, const Reaction& r, double mu) {
    const int n = g.n();
    DenseMatrix A(n);
    std::vector<double> Bdiag;
    assemble_rows(g, ls, r, mu, Bdiag, [&](int i, int j, double v) { A.add(i, j, v); });

    DenseMatrix M(n);
    DenseLU lu;
    auto factor = [&](double s) {
        M = A;
        for (int i = 0; i < n; ++i) M.add(i, i, -s * Bdiag[i]);
        lu.factor(M);
    };
    auto solve = [&](std::vector<double>& b) { lu.solve(b); };
    auto multA = [&](const std::vector<double>& v, std::vector<double>& out) {
        A.multiply(v, out);
    };
    const double shift =
        -std::max(r.f1_prime0(), r.f2_prime0()) - std::max(ls.d1, ls.d2) * mu * mu - 1.0;
    std::vector<bool> bd(n, false);
    return pencil_principal(n, Bdiag, shift, multA, factor, solve, bd);
}

} // namespace

void assemble_periodic_pencil(const Grid& g, const Landscape& ls, const Reaction& reaction,
                              double mu, DenseMatrix& A, std::vector<double>& Bdiag) {
    assemble_rows(g, ls, reaction, mu, Bdiag, [&](int i, int j, double v) { A.add(i, j, v); });
}

MuFamilySample lambda_mu_grid(const Landscape& ls, const Reaction& reaction, double mu,
                              int nodes_per_patch) {
    if (nodes_per_patch < 8)
        throw ResolutionTooCoarse("grid eigensolver needs nodes_per_patch >= 8");
    auto g = build_periodic_grid(ls, nodes_per_patch);
    PencilEig e = periodic_principal(*g, ls, reaction, mu);
    MuFamilySample out;
    out.mu = mu;
    out.lambda = e.lambda;
    out.x = g->x;
    out.psi = std::move(e.vec);
    out.residual = e.residual;
    return out;
}

EigenResult lambda1_grid(const Landscape& ls, const Reaction& reaction, int nodes_per_patch) {
    MuFamilySample s = lambda_mu_grid(ls, reaction, 0.0, nodes_per_patch);
    EigenResult res;
    res.lambda = s.lambda;
    res.x = std::move(s.x);
    res.phi = std::move(s.psi);
    res.method = EigenMethod::GridDiscretization;
    res.residual = s.residual;
    return res;
}

double lambda1_grid_richardson(const Landscape& ls, const Reaction& reaction,
                               int nodes_per_patch) {
    const double lh = lambda1_grid(ls, reaction, nodes_per_patch).lambda;
    const double lh2 = lambda1_grid(ls, reaction, 2 * nodes_per_patch).lambda;
    return (4.0 * lh2 - lh) / 3.0;
}

MuFamilySample lambda_mu_checked(const Landscape& ls, const Reaction& reaction, double mu,
                                 int nodes_per_patch) {
    MuFamilySample t = lambda_mu_transfer(ls, reaction, mu);
    const double lh = lambda_mu_grid(ls, reaction, mu, nodes_per_patch).lambda;
    const double lh2 = lambda_mu_grid(ls, reaction, mu, 2 * nodes_per_patch).lambda;
    const double extrap = (4.0 * lh2 - lh) / 3.0;
    const double scale = std::max(1.0, std::fabs(t.lambda));
    const double h = std::max(ls.l1, ls.l2) / (2.0 * nodes_per_patch);
    if (std::fabs(lh2 - t.lambda) > 50.0 * h * h * scale)
        throw MethodsDisagree("grid eigenvalue is not within the O(h^2) band of the transfer-matrix value");
    if (std::fabs(extrap - t.lambda) > 1e-6 * scale)
        throw MethodsDisagree("extrapolated grid eigenvalue differs from transfer-matrix value beyond 1e-6");
    return t;
}

MuFamilySample lambda_mu(const Landscape& ls, const Reaction& reaction, double mu,
                         LambdaMuMethod method, int nodes_per_patch) {
    if (method == LambdaMuMethod::TransferMatrix) return lambda_mu_transfer(ls, reaction, mu);
    return lambda_mu_grid(ls, reaction, mu, nodes_per_patch);
}

EigenResult lambda_dirichlet(const Landscape& ls, const Reaction& reaction, double R,
                             double y_shift, int nodes_per_patch) {
    if (!(R > 0.0)) throw NonPositiveParameter("lambda_dirichlet requires R > 0");
    auto g = build_window_grid(ls, R, y_shift, nodes_per_patch);
    const int n = g->n();
    BandedMatrix A(n, 2, 2);
    std::vector<double> Bdiag;
    assemble_rows(*g, ls, reaction, 0.0, Bdiag, [&](int i, int j, double v) { A.add(i, j, v); });

    BandedMatrix M(n, 2, 2);
    BandedLU lu;
    auto factor = [&](double s) {
        M = A;
        for (int i = 0; i < n; ++i) M.add(i, i, -s * Bdiag[i]);
        lu.factor(M);
    };
    auto solve = [&](std::vector<double>& b) { lu.solve(b); };
    auto multA = [&](const std::vector<double>& v, std::vector<double>& out) {
        A.multiply(v, out);
    };
    std::vector<bool> bd(n, false);
    for (int i = 0; i < n; ++i) bd[i] = g->kind[i] == NodeKind::Boundary;
    const double shift = -std::max(reaction.f1_prime0(), reaction.f2_prime0()) - 1.0;
    PencilEig e = pencil_principal(n, Bdiag, shift, multA, factor, solve, bd);

    EigenResult res;
    res.lambda = e.lambda;
    res.x = g->x;
    res.phi = std::move(e.vec);
    res.method = EigenMethod::GridDiscretization;
    res.residual = e.residual;
    return res;
}

CriticalLengths critical_patch_length(const Landscape& ls, const Reaction& reaction) {
    const double f1p = reaction.f1_prime0();
    const double f2p = reaction.f2_prime0();
    if (!(f1p > 0.0) || !(f2p < 0.0))
        throw NotSourceSink("critical patch length requires f1'(0) > 0 > f2'(0)");
    CriticalLengths out;
    const double base = 2.0 * std::sqrt(ls.d1 / f1p);
    const double amp = ls.sigma * std::sqrt(-ls.d1 * f2p / (ls.d2 * f1p));
    out.l1c = base * std::atan(amp * std::tanh(std::sqrt(-f2p / ls.d2) * 0.5 * ls.l2));
    out.L1c = base * std::atan(amp);
    const double arg = std::sqrt(f1p / ls.d1) * 0.5 * ls.l1;
    if (arg < 0.5 * kPi) {
        const double t = std::tan(arg);
        out.f2prime_c = -(ls.d2 * f1p / (ls.sigma * ls.sigma * ls.d1)) * t * t;
    }
    return out;
}

} // namespace patchkpp
