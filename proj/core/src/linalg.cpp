#include "onewave/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "onewave/error.hpp"

namespace onewave {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, cplx fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CVector ComplexMatrix::column(std::size_t c) const {
    CVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw ValidationError("matrix product: dimension mismatch");
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        cplx* orow = out.data_.data() + i * out.cols_;
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            const cplx* brow = b.data_.data() + k * b.cols_;
            for (std::size_t j = 0; j < b.cols_; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix sum: dimension mismatch");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw ValidationError("matrix difference: dimension mismatch");
    ComplexMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
}

ComplexMatrix operator*(cplx s, const ComplexMatrix& a) {
    ComplexMatrix out = a;
    for (cplx& v : out.data_) v *= s;
    return out;
}

CVector multiply(const ComplexMatrix& a, std::span<const cplx> x) {
    if (x.size() != a.cols()) throw ValidationError("matrix-vector product: dimension mismatch");
    CVector out(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto row = a.row(r);
        cplx s{};
        for (std::size_t c = 0; c < row.size(); ++c) s += row[c] * x[c];
        out[r] = s;
    }
    return out;
}

CVector multiply_adjoint(const ComplexMatrix& a, std::span<const cplx> x) {
    if (x.size() != a.rows()) throw ValidationError("adjoint product: dimension mismatch");
    CVector out(a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto row = a.row(r);
        const cplx xr = x[r];
        for (std::size_t c = 0; c < row.size(); ++c) out[c] += std::conj(row[c]) * xr;
    }
    return out;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& input) {
    if (!input.square()) throw ValidationError("hermitian_eigen: matrix is not square");
    if (!input.all_finite()) throw ValidationError("hermitian_eigen: non-finite entries");
    const std::size_t n = input.rows();

    const double amax = input.max_abs();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            asym = std::max(asym, std::abs(input(i, j) - std::conj(input(j, i))));
    if (asym > 1e-8 * amax) throw ValidationError("hermitian_eigen: matrix is not Hermitian");

    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = input(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const cplx v = 0.5 * (input(i, j) + std::conj(input(j, i)));
            a(i, j) = v;
            a(j, i) = std::conj(v);
        }
    }
    // Rows of vt are the eigenvectors, so the rotations touch contiguous memory.
    ComplexMatrix vt = ComplexMatrix::identity(n);

    const double fro = a.frobenius_norm();
    const double skip = 1e-18 * fro;
    bool converged = (n < 2) || fro == 0.0;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(2.0 * off) < 1e-14 * fro) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx g = a(p, q);
                const double ag = std::abs(g);
                if (ag <= skip) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const cplx e = g / ag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * ag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx se = s * e;
                const cplx sec = s * std::conj(e);

                auto rp = a.row(p);
                auto rq = a.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cplx apk = rp[k];
                    const cplx aqk = rq[k];
                    const cplx np = c * apk - se * aqk;
                    const cplx nq = sec * apk + c * aqk;
                    rp[k] = np;
                    rq[k] = nq;
                    a(k, p) = std::conj(np);
                    a(k, q) = std::conj(nq);
                }
                a(p, p) = app - t * ag;
                a(q, q) = aqq + t * ag;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                auto vp = vt.row(p);
                auto vq = vt.row(q);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx x = vp[k];
                    const cplx y = vq[k];
                    vp[k] = c * x - sec * y;
                    vq[k] = se * x + c * y;
                }
            }
        }
    }
    if (!converged) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(2.0 * off) >= 1e-14 * fro) {
            throw NumericalError("hermitian_eigen: Jacobi iteration did not converge in 100 sweeps");
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

    HermitianEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = order[col];
        out.eigenvalues[col] = a(src, src).real();
        const auto v = vt.row(src);
        for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, col) = v[k];
    }
    return out;
}

namespace {

// Gram-Schmidt (twice) of `candidate` against the first `count` columns of u.
bool orthogonalize_into(ComplexMatrix& u, std::size_t count, CVector candidate, std::size_t target) {
    const std::size_t m = u.rows();
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < count; ++j) {
            cplx proj{};
            for (std::size_t r = 0; r < m; ++r) proj += std::conj(u(r, j)) * candidate[r];
            for (std::size_t r = 0; r < m; ++r) candidate[r] -= proj * u(r, j);
        }
    }
    double nrm = 0.0;
    for (const cplx& v : candidate) nrm += std::norm(v);
    nrm = std::sqrt(nrm);
    if (nrm < 0.5) return false;
    for (std::size_t r = 0; r < m; ++r) u(r, target) = candidate[r] / nrm;
    return true;
}

}  // namespace

Svd svd(const ComplexMatrix& a) {
    if (!a.all_finite()) throw ValidationError("svd: non-finite entries");
    if (a.rows() < a.cols()) {
        Svd t = svd(a.adjoint());
        return {std::move(t.v), std::move(t.sigma), std::move(t.u)};
    }
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    ComplexMatrix gram(n, n);
    for (std::size_t r = 0; r < m; ++r) {
        const auto row = a.row(r);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx ci = std::conj(row[i]);
            if (ci == cplx{}) continue;
            auto g = gram.row(i);
            for (std::size_t j = i; j < n; ++j) g[j] += ci * row[j];
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) gram(j, i) = std::conj(gram(i, j));

    HermitianEigen eig = hermitian_eigen(gram);

    Svd out;
    out.sigma.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.sigma[j] = std::sqrt(std::max(eig.eigenvalues[j], 0.0));
    out.v = std::move(eig.eigenvectors);
    out.u = ComplexMatrix(m, n);
    const double smax = n > 0 ? out.sigma[0] : 0.0;

    // Candidate left vectors A v_j / sigma_j.
    ComplexMatrix cand = a * out.v;

    // The Gram matrix resolves sigma only down to ~sqrt(eps) sigma_max. Columns below
    // that level are refined by decomposing A V restricted to them.
    std::size_t split = n;
    for (std::size_t j = 0; j < n; ++j) {
        if (out.sigma[j] < 1e-6 * smax) {
            split = j;
            break;
        }
    }
    if (smax > 0.0 && split > 0 && split < n) {
        ComplexMatrix tail(m, n - split);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = split; c < n; ++c) tail(r, c - split) = cand(r, c);
        const Svd sub = svd(tail);
        ComplexMatrix vt(n, n - split);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = split; c < n; ++c) vt(r, c - split) = out.v(r, c);
        const ComplexMatrix rotated = vt * sub.v;
        for (std::size_t c = split; c < n; ++c) {
            out.sigma[c] = sub.sigma[c - split];
            for (std::size_t r = 0; r < n; ++r) out.v(r, c) = rotated(r, c - split);
            for (std::size_t r = 0; r < m; ++r) cand(r, c) = out.sigma[c] * sub.u(r, c - split);
        }
    }

    std::size_t filled = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (!(smax > 0.0 && out.sigma[j] > 1e-12 * smax)) break;
        CVector col = cand.column(j);
        for (cplx& c : col) c /= out.sigma[j];
        if (!orthogonalize_into(out.u, j, std::move(col), j)) break;
        filled = j + 1;
    }
    // Columns for tiny singular values: orthonormal completion.
    std::size_t next_basis = 0;
    for (std::size_t j = filled; j < n; ++j) {
        while (next_basis < m) {
            CVector e(m);
            e[next_basis++] = 1.0;
            if (orthogonalize_into(out.u, j, e, j)) break;
        }
    }
    return out;
}

ComplexMatrix matrix_abs(const ComplexMatrix& a) {
    const HermitianEigen eig = hermitian_eigen(a);
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const double w = std::abs(eig.eigenvalues[j]);
        if (w == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            const cplx vr = w * eig.eigenvectors(r, j);
            auto orow = out.row(r);
            for (std::size_t c = 0; c < n; ++c) orow[c] += vr * std::conj(eig.eigenvectors(c, j));
        }
    }
    return out;
}

TruncatedSvdSolver::TruncatedSvdSolver(const ComplexMatrix& a, double rel_cutoff) : rows_(a.rows()) {
    if (a.rows() < a.cols()) throw ValidationError("tsvd_solve: system must have rows >= cols");
    if (!(rel_cutoff > 0.0 && rel_cutoff < 1.0)) throw ValidationError("tsvd_solve: cutoff must lie in (0, 1)");
    Svd d = svd(a);
    const double smax = d.sigma.empty() ? 0.0 : d.sigma[0];
    while (rank_ < d.sigma.size() && smax > 0.0 && d.sigma[rank_] >= rel_cutoff * smax) ++rank_;
    u_ = ComplexMatrix(a.rows(), rank_);
    v_ = ComplexMatrix(a.cols(), rank_);
    sigma_.assign(d.sigma.begin(), d.sigma.begin() + static_cast<std::ptrdiff_t>(rank_));
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t j = 0; j < rank_; ++j) u_(r, j) = d.u(r, j);
    for (std::size_t r = 0; r < a.cols(); ++r)
        for (std::size_t j = 0; j < rank_; ++j) v_(r, j) = d.v(r, j);
}

CVector TruncatedSvdSolver::solve(std::span<const cplx> b) const {
    if (b.size() != rows_) throw ValidationError("tsvd_solve: right-hand side has wrong length");
    CVector coef = multiply_adjoint(u_, b);
    for (std::size_t j = 0; j < rank_; ++j) coef[j] /= sigma_[j];
    return multiply(v_, coef);
}

CVector tsvd_solve(const ComplexMatrix& a, std::span<const cplx> b, double rel_cutoff) {
    if (b.size() != a.rows()) throw ValidationError("tsvd_solve: right-hand side has wrong length");
    return TruncatedSvdSolver(a, rel_cutoff).solve(b);
}

NormalEigen normal_eigen(const ComplexMatrix& f) {
    if (!f.square()) throw ValidationError("normal_eigen: matrix is not square");
    const std::size_t n = f.rows();
    const ComplexMatrix fa = f.adjoint();
    ComplexMatrix herm(n, n);
    ComplexMatrix skew(n, n);  // (F - F^*) / 2i, Hermitian
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            herm(i, j) = 0.5 * (f(i, j) + fa(i, j));
            skew(i, j) = (f(i, j) - fa(i, j)) / cplx(0.0, 2.0);
        }
    }
    HermitianEigen eig = hermitian_eigen(herm);
    ComplexMatrix v = std::move(eig.eigenvectors);

    const double scale = std::max(f.max_abs(), 1e-300);
    const double gap = 1e-9 * scale;
    const double fro = f.frobenius_norm();

    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && eig.eigenvalues[end - 1] - eig.eigenvalues[end] <= gap) ++end;
        const std::size_t c = end - start;
        if (c > 1) {
            ComplexMatrix vc(n, c);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t j = 0; j < c; ++j) vc(r, j) = v(r, start + j);
            const ComplexMatrix vca = vc.adjoint();
            const ComplexMatrix restricted = vca * (f * vc);
            double off = 0.0;
            for (std::size_t i = 0; i < c; ++i)
                for (std::size_t j = 0; j < c; ++j)
                    if (i != j) off += std::norm(restricted(i, j));
            if (std::sqrt(off) > 1e-12 * fro) {
                const ComplexMatrix ks = vca * (skew * vc);
                const HermitianEigen sub = hermitian_eigen(ks);
                const ComplexMatrix rotated = vc * sub.eigenvectors;
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t j = 0; j < c; ++j) v(r, start + j) = rotated(r, j);
            }
        }
        start = end;
    }

    CVector lambda(n);
    for (std::size_t j = 0; j < n; ++j) {
        const CVector col = v.column(j);
        const CVector fc = multiply(f, col);
        cplx q{};
        for (std::size_t r = 0; r < n; ++r) q += std::conj(col[r]) * fc[r];
        lambda[j] = q;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return std::abs(lambda[i]) > std::abs(lambda[j]); });
    NormalEigen out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        out.eigenvalues[col] = lambda[order[col]];
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, col) = v(r, order[col]);
    }
    return out;
}

}  // namespace onewave
