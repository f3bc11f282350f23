#include "patchkpp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

extern "C" {
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab,
             const int* ldab, int* ipiv, int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku, const int* nrhs,
             const double* ab, const int* ldab, const int* ipiv, double* b, const int* ldb,
             int* info);
void dgetrf_(const int* m, const int* n, double* a, const int* lda, int* ipiv, int* info);
void dgetrs_(const char* trans, const int* n, const int* nrhs, const double* a, const int* lda,
             const int* ipiv, double* b, const int* ldb, int* info);
}

namespace patchkpp {

void BandedMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        const int ilo = std::max(0, j - ku_);
        const int ihi = std::min(n_ - 1, j + kl_);
        for (int i = ilo; i <= ihi; ++i)
            y[i] += ab_[std::size_t(kl_ + ku_ + i - j) + std::size_t(j) * ldab_] * x[j];
    }
}

void BandedLU::factor(const BandedMatrix& a) {
    n_ = a.n();
    kl_ = a.kl();
    ku_ = a.ku();
    ldab_ = a.ldab();
    ab_.assign(a.data(), a.data() + std::size_t(ldab_) * n_);
    ipiv_.assign(n_, 0);
    int info = 0;
    dgbtrf_(&n_, &n_, &kl_, &ku_, ab_.data(), &ldab_, ipiv_.data(), &info);
    if (info != 0)
        throw LinearSolveFailed("banded LU factorization failed (dgbtrf info=" +
                                std::to_string(info) + ")");
}

void BandedLU::solve(std::vector<double>& b) const {
    const char trans = 'N';
    const int nrhs = 1;
    int info = 0;
    dgbtrs_(&trans, &n_, &kl_, &ku_, &nrhs, ab_.data(), &ldab_, ipiv_.data(), b.data(), &n_,
            &info);
    if (info != 0)
        throw LinearSolveFailed("banded back-substitution failed (dgbtrs info=" +
                                std::to_string(info) + ")");
}

void DenseMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) {
        const double xj = x[j];
        const double* col = a_.data() + std::size_t(j) * n_;
        for (int i = 0; i < n_; ++i) y[i] += col[i] * xj;
    }
}

void DenseLU::factor(const DenseMatrix& a) {
    n_ = a.n();
    a_.assign(a.data(), a.data() + std::size_t(n_) * n_);
    ipiv_.assign(n_, 0);
    int info = 0;
    dgetrf_(&n_, &n_, a_.data(), &n_, ipiv_.data(), &info);
    if (info != 0)
        throw LinearSolveFailed("dense LU factorization failed (dgetrf info=" +
                                std::to_string(info) + ")");
}

void DenseLU::solve(std::vector<double>& b) const {
    const char trans = 'N';
    const int nrhs = 1;
    int info = 0;
    dgetrs_(&trans, &n_, &nrhs, a_.data(), &n_, ipiv_.data(), b.data(), &n_, &info);
    if (info != 0)
        throw LinearSolveFailed("dense back-substitution failed (dgetrs info=" +
                                std::to_string(info) + ")");
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    LineFit f;
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) return f;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) return f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    if (n > 2) f.slope_stderr = std::sqrt(ss / double(n - 2) / sxx);
    return f;
}

} // namespace patchkpp
