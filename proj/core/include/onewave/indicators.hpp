#pragma once

#include <limits>
#include <span>
#include <vector>

#include "onewave/spectral.hpp"

namespace onewave {

struct RegularizationParams {
    double alpha = 1e-13;
    int truncation = 60;

    void validate() const;
};

/// Value reported when the regularized sum vanishes (signal orthogonal to every mode).
inline constexpr double kIndicatorSentinel = std::numeric_limits<double>::max();

struct IndicatorValue {
    double value = 0.0;
    double raw_series = 0.0;  ///< unregularized partial sum of |c_j|^2 / |lambda_j|
    int terms_used = 0;
    bool dropped_terms = false;     ///< some |lambda_j| < 1e-300 were skipped
    bool degenerate_signal = false; ///< value is kIndicatorSentinel
};

/// sum |c_j|^2 / |lambda_j| over |j| <= N; terms with |lambda_j| < 1e-300 are skipped.
double one_wave_series(const FarFieldPattern& u, const DiskSpectrum& spec, bool* dropped = nullptr);

/// 1 / sum |lambda_j| |c_j|^2 / |lambda_j + alpha|^2 over |j| <= reg.truncation.
IndicatorValue regularized_indicator(const FarFieldPattern& u, const DiskSpectrum& spec,
                                     const RegularizationParams& reg);

/// sum |lambda_j|^2 / (|lambda_j|^2 + alpha)^2 |c_j|^2.
double esm_indicator(const FarFieldPattern& u, const DiskSpectrum& spec, double alpha);

/// Same indicators from precomputed coefficients c_j = <u, phi_j> and eigenvalues,
/// both indexed j = -N..N.
IndicatorValue regularized_from_modes(std::span<const cplx> coefficients, std::span<const cplx> eigenvalues,
                                      double alpha);
double esm_from_modes(std::span<const cplx> coefficients, std::span<const cplx> eigenvalues, double alpha);

enum class ClassicalMethod { QuarterPower, FSharp };

/// Multi-wave factorization indicator from a multistatic matrix. The spectral
/// decomposition is computed once; indicator(z) is then cheap.
class ClassicalFactorization {
public:
    ClassicalFactorization(const ComplexMatrix& f, double k, ClassicalMethod method);

    /// [sum_j |<phi_z, psi_j>|^2 / |lambda_j|]^{-1} with phi_z = exp(i k xhat.z).
    double indicator(Vec2 z) const;
    /// The Picard sum itself (reciprocal of indicator).
    double picard_sum(Vec2 z) const;

    std::size_t terms() const { return weights_.size(); }

private:
    double k_;
    std::size_t n_;
    std::vector<double> weights_;  // 1 / |lambda_j|, kept modes only
    ComplexMatrix vectors_;        // kept eigenvectors as columns
};

double classical_indicator(const ComplexMatrix& f, Vec2 z, double k, ClassicalMethod method);

}  // namespace onewave
