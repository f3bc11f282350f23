#ifndef PATCHKPP_LINALG_HPP
#define PATCHKPP_LINALG_HPP

#include <vector>

#include "patchkpp/errors.hpp"

namespace patchkpp {

/** Banded matrix in LAPACK band storage (column-major, ldab = 2*kl+ku+1),
 *  ready for dgbtrf/dgbtrs. Entries outside the band are rejected. */
class BandedMatrix {
  public:
    BandedMatrix(int n, int kl, int ku)
        : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(std::size_t(ldab_) * n, 0.0) {}

    int n() const { return n_; }
    int kl() const { return kl_; }
    int ku() const { return ku_; }

    double& at(int i, int j) { return ab_[std::size_t(kl_ + ku_ + i - j) + std::size_t(j) * ldab_]; }
    double get(int i, int j) const {
        if (j - i > ku_ || i - j > kl_) return 0.0;
        return ab_[std::size_t(kl_ + ku_ + i - j) + std::size_t(j) * ldab_];
    }
    void add(int i, int j, double v) { at(i, j) += v; }
    void clear() { std::fill(ab_.begin(), ab_.end(), 0.0); }

    // y = A x
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;

    double* data() { return ab_.data(); }
    const double* data() const { return ab_.data(); }
    int ldab() const { return ldab_; }

  private:
    int n_, kl_, ku_, ldab_;
    std::vector<double> ab_;
};

/** LU factorization of a banded matrix (partial pivoting). The factor()
 *  call overwrites an internal copy, so the source matrix stays intact. */
class BandedLU {
  public:
    void factor(const BandedMatrix& a);
    void solve(std::vector<double>& b) const; // in place
    bool factored() const { return !ab_.empty(); }

  private:
    int n_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
    std::vector<double> ab_;
    std::vector<int> ipiv_;
};

/** Dense column-major matrix, used for the small periodic-cell problems
 *  where the wrap-around coupling breaks bandedness. */
class DenseMatrix {
  public:
    explicit DenseMatrix(int n) : n_(n), a_(std::size_t(n) * n, 0.0) {}
    int n() const { return n_; }
    double& at(int i, int j) { return a_[std::size_t(i) + std::size_t(j) * n_]; }
    double get(int i, int j) const { return a_[std::size_t(i) + std::size_t(j) * n_]; }
    void add(int i, int j, double v) { at(i, j) += v; }
    void clear() { std::fill(a_.begin(), a_.end(), 0.0); }
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

  private:
    int n_;
    std::vector<double> a_;
};

class DenseLU {
  public:
    void factor(const DenseMatrix& a);
    void solve(std::vector<double>& b) const; // in place
    bool factored() const { return !a_.empty(); }

  private:
    int n_ = 0;
    std::vector<double> a_;
    std::vector<int> ipiv_;
};

// Least-squares line fit y ~ a + c*x; returns slope c and its standard error.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace patchkpp

#endif
