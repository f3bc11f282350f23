#ifndef PATCHKPP_LANDSCAPE_HPP
#define PATCHKPP_LANDSCAPE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "patchkpp/errors.hpp"

namespace patchkpp {

/** Periodic two-patch landscape.
 *
 * One period (tile) of length l = l1 + l2 consists of a type-1 patch of
 * length l1 followed by a type-2 patch of length l2. Type-1 patches occupy
 * (n*l - l1, n*l), type-2 patches (n*l, n*l + l2). The junctions n*l
 * (type 1 -> type 2) form the set S1, the junctions n*l + l2 form S2.
 *
 * alpha is the probability that an individual sitting at an interface moves
 * into the adjacent type-1 patch. The derived quantities are
 *     k     = alpha/(1-alpha) * d2/d1   (density rescaling on type-2 patches)
 *     sigma = d2/(k*d1) = (1-alpha)/alpha (derivative jump factor)
 * In the rescaled (continuous-density) variables the matching conditions read
 *     u(x-) = u(x+),  u_x(x-) = sigma * u_x(x+)   at S1,
 *     u(x-) = u(x+),  sigma * u_x(x-) = u_x(x+)   at S2.
 */
struct Landscape {
    double l1 = 1.0;
    double l2 = 1.0;
    double d1 = 1.0;
    double d2 = 1.0;
    double alpha = 0.5;
    // derived
    double k = 1.0;
    double sigma = 1.0;
    double period = 2.0;

    double diffusivity(int patch_type) const { return patch_type == 1 ? d1 : d2; }
    double patch_length(int patch_type) const { return patch_type == 1 ? l1 : l2; }
};

Landscape build_landscape(double l1, double l2, double d1, double d2, double alpha);

// Convenience constructor from sigma; inverts alpha = 1/(1+sigma).
Landscape build_landscape_sigma(double l1, double l2, double d1, double d2, double sigma);

/** Per-patch KPP reaction terms.
 *
 * Either the logistic family f_i(s) = s*(mu_i - s), or user-supplied
 * (tabulated) nonlinearities with explicitly given linearizations f_i'(0)
 * and caps K_i (f_i <= 0 on [K_i, inf)). The eigenvalue code relies on
 * the exact linearizations, so tabulated reactions must supply them rather
 * than have them estimated.
 *
 * Convention: type-1 patches are the more favorable ones, f1'(0) >= f2'(0).
 */
class Reaction {
  public:
    enum class Kind { Logistic, Tabulated };

    static Reaction logistic(double mu1, double mu2);
    static Reaction tabulated(std::function<double(double)> f1,
                              std::function<double(double)> f2,
                              double f1_prime0, double f2_prime0,
                              double K1, double K2);

    Kind kind() const { return kind_; }
    double f(int patch_type, double s) const {
        return patch_type == 1 ? f1_(s) : f2_(s);
    }
    // df/ds; analytic for logistic, central difference for tabulated
    double fprime(int patch_type, double s) const;
    double fprime0(int patch_type) const { return patch_type == 1 ? f1p0_ : f2p0_; }
    double f1_prime0() const { return f1p0_; }
    double f2_prime0() const { return f2p0_; }
    double K1() const { return K1_; }
    double K2() const { return K2_; }
    double cap() const { return K1_ > K2_ ? K1_ : K2_; }
    // max |f'| over [0, s_max], the Lipschitz constant used in bounds
    double lipschitz(double s_max) const;
    double mu1() const { return mu1_; }
    double mu2() const { return mu2_; }

  private:
    Reaction() = default;
    Kind kind_ = Kind::Logistic;
    std::function<double(double)> f1_, f2_;
    double f1p0_ = 0.0, f2p0_ = 0.0;
    double K1_ = 1.0, K2_ = 1.0;
    double mu1_ = 0.0, mu2_ = 0.0; // logistic only
};

/** Sampled check of the standing hypotheses on a reaction.
 *
 * cap_bound_holds:   f_i <= 0 on [K_i, 10*max(K1,K2)] (sampled)
 * kpp_holds:         s -> f_i(s)/s non-increasing for both i (sampled),
 *                    and strictly decreasing for at least one i.
 * The check is sampling-based on a log-spaced grid, not symbolic; it is a
 * heuristic report, never a hard gate.
 */
struct HypothesisReport {
    bool cap_bound_holds = false;
    bool kpp_nonincreasing[2] = {false, false};
    bool kpp_strict_somewhere = false;
    bool kpp_holds = false;
    std::string detail;
};

HypothesisReport validate_hypotheses(const Reaction& reaction);

// -- interface sets --------------------------------------------------------

enum class InterfaceKind { S1, S2 };

struct InterfacePoint {
    double x;
    InterfaceKind kind;
};

/** All interface points of S = S1 ∪ S2 inside the window [-n*l, n*l]. */
std::vector<InterfacePoint> interface_set(const Landscape& ls, int n_tiles);

// Patch type at a position x not on an interface: 1 on (nl-l1, nl), 2 on (nl, nl+l2).
int patch_type_at(const Landscape& ls, double x);

} // namespace patchkpp

#endif
