#include "onewave/indicators.hpp"

#include <cmath>
#include <numbers>

#include "onewave/error.hpp"

namespace onewave {

namespace {

constexpr double kTinyEigenvalue = 1e-300;

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("regularization alpha must be positive");
}

void require_same_k(const FarFieldPattern& u, const DiskSpectrum& spec) {
    if (std::abs(u.k - spec.k) > 1e-12 * std::max(u.k, spec.k)) {
        throw ValidationError("wavenumber of the data does not match the test-disk spectrum");
    }
}

CVector modal_coefficients(const FarFieldPattern& u, const DiskSpectrum& spec, int truncation) {
    require_same_k(u, spec);
    if (truncation > spec.truncation) throw ValidationError("truncation exceeds the available spectrum");
    return inner_products(u, truncation, spec.disk.center);
}

std::span<const cplx> central(const DiskSpectrum& spec, int truncation) {
    return std::span<const cplx>(spec.eigenvalues).subspan(spec.truncation - truncation, 2 * truncation + 1);
}

}  // namespace

void RegularizationParams::validate() const {
    require_alpha(alpha);
    if (truncation < 1) throw ValidationError("truncation N must be at least 1");
}

double one_wave_series(const FarFieldPattern& u, const DiskSpectrum& spec, bool* dropped) {
    const CVector c = modal_coefficients(u, spec, spec.truncation);
    double sum = 0.0;
    bool skipped = false;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const double lam = std::abs(spec.eigenvalues[j]);
        if (lam < kTinyEigenvalue) {
            skipped = true;
            continue;
        }
        sum += std::norm(c[j]) / lam;
    }
    if (dropped) *dropped = skipped;
    return sum;
}

IndicatorValue regularized_from_modes(std::span<const cplx> coefficients, std::span<const cplx> eigenvalues,
                                      double alpha) {
    require_alpha(alpha);
    if (coefficients.size() != eigenvalues.size()) throw ValidationError("mode count mismatch");
    IndicatorValue out;
    double sum = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        const double lam = std::abs(eigenvalues[j]);
        if (lam < kTinyEigenvalue) {
            out.dropped_terms = true;
            continue;
        }
        const double c2 = std::norm(coefficients[j]);
        sum += lam * c2 / std::norm(eigenvalues[j] + alpha);
        out.raw_series += c2 / lam;
        ++out.terms_used;
    }
    if (sum > 0.0) {
        out.value = 1.0 / sum;
    } else {
        out.value = kIndicatorSentinel;
        out.degenerate_signal = true;
    }
    return out;
}

IndicatorValue regularized_indicator(const FarFieldPattern& u, const DiskSpectrum& spec,
                                     const RegularizationParams& reg) {
    reg.validate();
    const CVector c = modal_coefficients(u, spec, reg.truncation);
    return regularized_from_modes(c, central(spec, reg.truncation), reg.alpha);
}

double esm_from_modes(std::span<const cplx> coefficients, std::span<const cplx> eigenvalues, double alpha) {
    require_alpha(alpha);
    if (coefficients.size() != eigenvalues.size()) throw ValidationError("mode count mismatch");
    double sum = 0.0;
    for (std::size_t j = 0; j < coefficients.size(); ++j) {
        const double l2 = std::norm(eigenvalues[j]);
        const double d = l2 + alpha;
        sum += l2 / (d * d) * std::norm(coefficients[j]);
    }
    return sum;
}

double esm_indicator(const FarFieldPattern& u, const DiskSpectrum& spec, double alpha) {
    require_alpha(alpha);
    const CVector c = modal_coefficients(u, spec, spec.truncation);
    return esm_from_modes(c, spec.eigenvalues, alpha);
}

ClassicalFactorization::ClassicalFactorization(const ComplexMatrix& f, double k, ClassicalMethod method)
    : k_(k), n_(f.rows()) {
    if (!f.square()) throw ValidationError("multistatic matrix must be square");
    if (!(k > 0.0)) throw ValidationError("wavenumber k must be positive");
    if (n_ < kMinAngles) throw ValidationError("multistatic matrix needs at least 16 directions");

    std::vector<double> mags;
    ComplexMatrix vecs;
    if (method == ClassicalMethod::QuarterPower) {
        NormalEigen eig = normal_eigen(f);
        for (const cplx& l : eig.eigenvalues) mags.push_back(std::abs(l));
        vecs = std::move(eig.eigenvectors);
    } else {
        const ComplexMatrix fa = f.adjoint();
        ComplexMatrix re(n_, n_), im(n_, n_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                re(i, j) = 0.5 * (f(i, j) + fa(i, j));
                im(i, j) = (f(i, j) - fa(i, j)) / cplx(0.0, 2.0);
            }
        }
        HermitianEigen eig = hermitian_eigen(matrix_abs(re) + matrix_abs(im));
        for (double l : eig.eigenvalues) mags.push_back(std::abs(l));
        vecs = std::move(eig.eigenvectors);
    }

    double lmax = 0.0;
    for (double m : mags) lmax = std::max(lmax, m);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < mags.size(); ++j)
        if (lmax > 0.0 && mags[j] >= 1e-14 * lmax) keep.push_back(j);

    vectors_ = ComplexMatrix(n_, keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c) {
        weights_.push_back(1.0 / mags[keep[c]]);
        for (std::size_t r = 0; r < n_; ++r) vectors_(r, c) = vecs(r, keep[c]);
    }
}

double ClassicalFactorization::picard_sum(Vec2 z) const {
    const double two_pi = 2.0 * std::numbers::pi;
    CVector phi(n_);
    for (std::size_t j = 0; j < n_; ++j) {
        const double th = two_pi * static_cast<double>(j) / static_cast<double>(n_);
        phi[j] = std::exp(cplx(0.0, k_ * (z.x * std::cos(th) + z.y * std::sin(th))));
    }
    // Unit discrete eigenvectors: the L2 inner product picks up sqrt(2 pi / n).
    const CVector proj = multiply_adjoint(vectors_, phi);
    const double w = two_pi / static_cast<double>(n_);
    double sum = 0.0;
    for (std::size_t j = 0; j < proj.size(); ++j) sum += w * std::norm(proj[j]) * weights_[j];
    return sum;
}

double ClassicalFactorization::indicator(Vec2 z) const {
    const double s = picard_sum(z);
    return s > 0.0 ? 1.0 / s : kIndicatorSentinel;
}

double classical_indicator(const ComplexMatrix& f, Vec2 z, double k, ClassicalMethod method) {
    return ClassicalFactorization(f, k, method).indicator(z);
}

}  // namespace onewave
