#include "patchkpp/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace patchkpp {

Landscape build_landscape(double l1, double l2, double d1, double d2, double alpha) {
    if (!(l1 > 0.0) || !(l2 > 0.0) || !(d1 > 0.0) || !(d2 > 0.0))
        throw NonPositiveParameter("landscape requires l1, l2, d1, d2 > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw AlphaOutOfRange("alpha must lie strictly between 0 and 1");
    Landscape ls;
    ls.l1 = l1;
    ls.l2 = l2;
    ls.d1 = d1;
    ls.d2 = d2;
    ls.alpha = alpha;
    ls.k = alpha / (1.0 - alpha) * d2 / d1;
    ls.sigma = (1.0 - alpha) / alpha;
    ls.period = l1 + l2;
    return ls;
}

Landscape build_landscape_sigma(double l1, double l2, double d1, double d2, double sigma) {
    if (!(sigma > 0.0))
        throw NonPositiveParameter("sigma must be positive");
    return build_landscape(l1, l2, d1, d2, 1.0 / (1.0 + sigma));
}

Reaction Reaction::logistic(double mu1, double mu2) {
    if (mu1 < mu2)
        throw ConfigError("logistic reaction requires mu1 >= mu2 (type-1 patches are the favorable ones)");
    Reaction r;
    r.kind_ = Kind::Logistic;
    r.mu1_ = mu1;
    r.mu2_ = mu2;
    r.f1_ = [mu1](double s) { return s * (mu1 - s); };
    r.f2_ = [mu2](double s) { return s * (mu2 - s); };
    r.f1p0_ = mu1;
    r.f2p0_ = mu2;
    r.K1_ = mu1 > 0.0 ? mu1 : 1.0;
    r.K2_ = mu2 > 0.0 ? mu2 : 1.0;
    return r;
}

Reaction Reaction::tabulated(std::function<double(double)> f1,
                             std::function<double(double)> f2,
                             double f1_prime0, double f2_prime0,
                             double K1, double K2) {
    if (!(K1 > 0.0) || !(K2 > 0.0))
        throw NonPositiveParameter("tabulated reaction requires positive caps K1, K2");
    if (f1_prime0 < f2_prime0)
        throw ConfigError("tabulated reaction requires f1'(0) >= f2'(0)");
    Reaction r;
    r.kind_ = Kind::Tabulated;
    r.f1_ = std::move(f1);
    r.f2_ = std::move(f2);
    r.f1p0_ = f1_prime0;
    r.f2p0_ = f2_prime0;
    r.K1_ = K1;
    r.K2_ = K2;
    return r;
}

double Reaction::fprime(int patch_type, double s) const {
    if (kind_ == Kind::Logistic)
        return (patch_type == 1 ? mu1_ : mu2_) - 2.0 * s;
    const double h = 1e-6 * (1.0 + std::fabs(s));
    return (f(patch_type, s + h) - f(patch_type, s - h)) / (2.0 * h);
}

double Reaction::lipschitz(double s_max) const {
    if (kind_ == Kind::Logistic) {
        // |mu - 2s| on [0, s_max] is maximal at an endpoint
        double m = 0.0;
        for (double mu : {mu1_, mu2_})
            m = std::max({m, std::fabs(mu), std::fabs(mu - 2.0 * s_max)});
        return m;
    }
    double m = 0.0;
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
        const double s = s_max * i / n;
        m = std::max({m, std::fabs(fprime(1, s)), std::fabs(fprime(2, s))});
    }
    return m;
}

HypothesisReport validate_hypotheses(const Reaction& reaction) {
    HypothesisReport rep;
    std::ostringstream detail;
    const double smax = 10.0 * reaction.cap();

    // cap bound: f_i <= 0 on [K_i, 10*max(K1,K2)], sampled
    rep.cap_bound_holds = true;
    for (int pt : {1, 2}) {
        const double Ki = pt == 1 ? reaction.K1() : reaction.K2();
        const int n = 200;
        for (int i = 0; i <= n; ++i) {
            const double s = Ki + (smax - Ki) * i / n;
            if (s <= 0.0) continue;
            if (reaction.f(pt, s) > 1e-12 * (1.0 + std::fabs(s))) {
                rep.cap_bound_holds = false;
                detail << "f" << pt << "(" << s << ") > 0 above its cap; ";
                break;
            }
        }
    }

    // KPP shape of s -> f(s)/s on a log-spaced grid in [1e-6, smax]
    const int n = 400;
    const double lo = 1e-6;
    for (int pt : {1, 2}) {
        bool noninc = true;
        bool strict = false;
        double prev = reaction.f(pt, lo) / lo;
        for (int i = 1; i <= n; ++i) {
            const double s = lo * std::pow(smax / lo, double(i) / n);
            const double q = reaction.f(pt, s) / s;
            if (q > prev + 1e-10 * (1.0 + std::fabs(prev))) noninc = false;
            if (q < prev - 1e-10 * (1.0 + std::fabs(prev))) strict = true;
            prev = q;
        }
        rep.kpp_nonincreasing[pt - 1] = noninc;
        if (noninc && strict) rep.kpp_strict_somewhere = true;
        if (!noninc) detail << "f" << pt << "(s)/s increases somewhere; ";
    }
    rep.kpp_holds = rep.kpp_nonincreasing[0] && rep.kpp_nonincreasing[1] &&
                    rep.kpp_strict_somewhere;
    rep.detail = detail.str();
    return rep;
}

std::vector<InterfacePoint> interface_set(const Landscape& ls, int n_tiles) {
    std::vector<InterfacePoint> pts;
    const double l = ls.period;
    for (int m = -n_tiles; m <= n_tiles; ++m) {
        const double s1 = m * l;
        const double s2 = m * l + ls.l2;
        if (s1 > -n_tiles * l && s1 < n_tiles * l) pts.push_back({s1, InterfaceKind::S1});
        if (s2 > -n_tiles * l && s2 < n_tiles * l) pts.push_back({s2, InterfaceKind::S2});
    }
    std::sort(pts.begin(), pts.end(),
              [](const InterfacePoint& a, const InterfacePoint& b) { return a.x < b.x; });
    return pts;
}

int patch_type_at(const Landscape& ls, double x) {
    const double l = ls.period;
    double r = std::fmod(x, l);
    if (r < 0) r += l;
    // r in [0, l): type 2 on (0, l2), type 1 on (l2, l)
    return (r > ls.l2) ? 1 : 2;
}

} // namespace patchkpp
