#ifndef PATCHKPP_EIGEN_HPP
#define PATCHKPP_EIGEN_HPP

#include <array>
#include <optional>
#include <vector>

#include "patchkpp/grid.hpp"
#include "patchkpp/landscape.hpp"

namespace patchkpp {

enum class EigenMethod { DispersionRoot, TransferMatrix, GridDiscretization };

/** Principal eigenpair. The eigenfunction is sampled at x (one period for
 *  the periodic problems, [-R, R] for the Dirichlet one), positive on the
 *  open domain and normalized to sup-norm 1. residual is the maximum
 *  pointwise defect of the defining equations plus interface conditions,
 *  measured in the method's own discretization. */
struct EigenResult {
    double lambda = 0.0;
    std::vector<double> x;
    std::vector<double> phi;
    EigenMethod method = EigenMethod::DispersionRoot;
    double residual = 0.0;
};

/** One sample of the drifted eigenvalue family lambda(mu). */
struct MuFamilySample {
    double mu = 0.0;
    double lambda = 0.0;
    std::vector<double> x;
    std::vector<double> psi;
    double residual = 0.0;
};

/** Principal periodic eigenvalue via the closed-form dispersion relation
 *
 *   sqrt(q1) tan(sqrt(q1) l1/2) = sigma sqrt(-q2) tanh(sqrt(-q2) l2/2),
 *   q_i = (f_i'(0) + lambda)/d_i,
 *
 *  whose smallest root in [-f1'(0), -f2'(0)] is lambda_1. The left side is
 *  increasing from 0 to +inf while the tan argument sweeps its principal
 *  branch, the right side is decreasing, so a bracketed bisection on the
 *  difference finds the smallest root. The eigenfunction is reconstructed
 *  from the symmetric closed form (phi'(-l1/2) = phi'(l2/2) = 0). */
EigenResult lambda1_dispersion(const Landscape& ls, const Reaction& reaction,
                               int samples_per_patch = 32);

/** Principal periodic eigenvalue from the discretized operator on one
 *  period (shifted inverse power iteration on the dense wrap-around
 *  system). */
EigenResult lambda1_grid(const Landscape& ls, const Reaction& reaction, int nodes_per_patch);

/** Richardson-extrapolated grid eigenvalue (nodes_per_patch and twice that). */
double lambda1_grid_richardson(const Landscape& ls, const Reaction& reaction,
                               int nodes_per_patch);

/** lambda(mu) by transfer-matrix monodromy: inside each patch the equation
 *  has constant coefficients and (psi, psi') propagates by an exact 2x2
 *  matrix exponential; at the interfaces the E_mu flux conditions act as
 *  jump matrices
 *      J1 = [[1, 0], [mu (1 - 1/sigma), 1/sigma]]   at S1,
 *      J2 = [[1, 0], [mu (1 - sigma),   sigma  ]]   at S2.
 *  lambda(mu) is the smallest root of det(M(lambda) - I) = 0 over one
 *  period whose monodromy eigenvector propagates to a positive psi. */
MuFamilySample lambda_mu_transfer(const Landscape& ls, const Reaction& reaction, double mu,
                                  int samples_per_patch = 32);

/** lambda(mu) from the drifted grid operator with modified interface
 *  stencils (discrete E_mu conditions). */
MuFamilySample lambda_mu_grid(const Landscape& ls, const Reaction& reaction, double mu,
                              int nodes_per_patch);

/** Transfer-matrix value cross-checked against the Richardson-extrapolated
 *  grid value; throws MethodsDisagree beyond the tolerance gate. */
MuFamilySample lambda_mu_checked(const Landscape& ls, const Reaction& reaction, double mu,
                                 int nodes_per_patch);

enum class LambdaMuMethod { TransferMatrix, GridDiscretization };
MuFamilySample lambda_mu(const Landscape& ls, const Reaction& reaction, double mu,
                         LambdaMuMethod method, int nodes_per_patch = 64);

/** Principal Dirichlet eigenvalue on [-R, R] with the interface set S - y
 *  inside (grid discretization, banded inverse power iteration). */
EigenResult lambda_dirichlet(const Landscape& ls, const Reaction& reaction, double R,
                             double y_shift, int nodes_per_patch);

/** Closed-form persistence thresholds for source-sink landscapes
 *  (f1'(0) > 0 > f2'(0)).
 *   l1c:       critical favorable-patch length at which lambda_1 = 0
 *   L1c:       its l2 -> infinity limit
 *   f2prime_c: critical sink rate for the supplied l1; absent when the
 *              tan argument reaches pi/2, i.e. when persistence holds for
 *              every sink strength. */
struct CriticalLengths {
    double l1c = 0.0;
    double L1c = 0.0;
    std::optional<double> f2prime_c;
};

CriticalLengths critical_patch_length(const Landscape& ls, const Reaction& reaction);

// -- shared internals, exposed for tests and for the pde module -----------

using Mat2 = std::array<double, 4>; // row-major [[a,b],[c,d]]

Mat2 mat2_mul(const Mat2& a, const Mat2& b);
/** exp(L*A) for the companion system of psi'' = 2 mu psi' - (mu^2 + q) psi. */
Mat2 patch_propagator(double q, double mu, double L);
Mat2 jump_s1(double mu, double sigma);
Mat2 jump_s2(double mu, double sigma);
/** Monodromy over one period, starting just right of the S1 point at 0. */
Mat2 monodromy(const Landscape& ls, const Reaction& reaction, double mu, double lambda);

/** Assemble the dense pencil (A, B) of the periodic eigenproblem with drift
 *  mu on a periodic grid: PDE rows carry B=1, interface rows are the
 *  discrete E_mu flux conditions with B=0. */
void assemble_periodic_pencil(const Grid& g, const Landscape& ls, const Reaction& reaction,
                              double mu, class DenseMatrix& A, std::vector<double>& Bdiag);

} // namespace patchkpp

#endif
