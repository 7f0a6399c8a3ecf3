#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace onewave {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols, cplx fill = {});

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const cplx> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    CVector column(std::size_t c) const;

    std::span<const cplx> data() const { return data_; }

    ComplexMatrix adjoint() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(cplx s, const ComplexMatrix& a);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

CVector multiply(const ComplexMatrix& a, std::span<const cplx> x);
/// a^* x without forming the adjoint.
CVector multiply_adjoint(const ComplexMatrix& a, std::span<const cplx> x);

/// Eigenvalues in descending order; eigenvectors are the matching columns.
struct HermitianEigen {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic complex Jacobi rotations. Input must be Hermitian to 1e-8 relative
/// (it is symmetrized before iterating). Throws ValidationError on non-square or
/// non-Hermitian input and NumericalError after 100 sweeps without convergence.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

/// Thin singular value decomposition a = U diag(sigma) V^*, sigma descending.
/// Built from the eigendecomposition of a^*a, so singular values below roughly
/// 1e-8 * sigma_max carry only half the working precision.
struct Svd {
    ComplexMatrix u;
    std::vector<double> sigma;
    ComplexMatrix v;
};
Svd svd(const ComplexMatrix& a);

/// V |diag(mu)| V^* for Hermitian a.
ComplexMatrix matrix_abs(const ComplexMatrix& a);

/// Least-squares solve restricted to singular directions with
/// sigma >= rel_cutoff * sigma_max. Factor once, solve for many right-hand sides.
class TruncatedSvdSolver {
public:
    TruncatedSvdSolver() = default;
    TruncatedSvdSolver(const ComplexMatrix& a, double rel_cutoff);

    CVector solve(std::span<const cplx> b) const;
    std::size_t rank() const { return rank_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return v_.rows(); }

private:
    std::size_t rows_ = 0;
    std::size_t rank_ = 0;
    ComplexMatrix u_;  // rows x rank
    ComplexMatrix v_;  // cols x rank
    std::vector<double> sigma_;
};

CVector tsvd_solve(const ComplexMatrix& a, std::span<const cplx> b, double rel_cutoff);

/// Eigen-decomposition of a normal matrix: the Hermitian part is diagonalized
/// first, and clusters of (near) equal eigenvalues are split with the
/// anti-Hermitian part. Eigenvalues are the Rayleigh quotients v^* a v, ordered
/// by decreasing modulus.
struct NormalEigen {
    CVector eigenvalues;
    ComplexMatrix eigenvectors;
};
NormalEigen normal_eigen(const ComplexMatrix& a);

}  // namespace onewave
