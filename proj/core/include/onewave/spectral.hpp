#pragma once

#include <vector>

#include "onewave/forward.hpp"

namespace onewave {

/// Sampling disk B_h(z) whose far-field operator has a closed-form eigensystem.
struct TestDisk {
    Vec2 center;
    double radius = 1.0;
    BoundaryCondition bc;
};

/// lambda_n for n = -N..N (stored at index n + N). Independent of the disk centre.
struct DiskSpectrum {
    double k = 0.0;
    TestDisk disk;
    int truncation = 0;
    CVector eigenvalues;
    /// A sound-soft eigenvalue vanished because J_n(kh) ~ 0 (Dirichlet eigenvalue).
    bool dirichlet_hit = false;

    cplx eigenvalue(int n) const { return eigenvalues[static_cast<std::size_t>(n + truncation)]; }
};

/// sqrt(2/(k pi)) e^{-i pi/4}
cplx far_field_constant(double k);

/// lambda_n = -2 pi C J_n/H_n (sound-soft) or -2 pi C (k J_n' + eta J_n)/(k H_n' + eta H_n).
/// dirichlet_hit is set when a sound-soft numerator |J_n(kh)| < 1e-12.
cplx disk_eigenvalue(int n, double k, double h, const BoundaryCondition& bc, bool* dirichlet_hit = nullptr);

/// lambda_0..lambda_{n_max} from a single Bessel run.
CVector disk_eigenvalue_run(int n_max, double k, double h, const BoundaryCondition& bc,
                            bool* dirichlet_hit = nullptr);

DiskSpectrum spectral_system(const TestDisk& disk, double k, int truncation);

/// e^{i n theta} e^{-i k z.xhat}
cplx eigenfunction_value(int n, Vec2 center, double k, Direction theta_hat);

/// True when n_theta < 2 (|n| + ceil(k |z|)) + 16, i.e. the quadrature may alias.
bool inner_product_aliased(std::size_t n_theta, int n, double k, Vec2 center);

/// Trapezoidal (2 pi / n_theta) sum_j v_j conj(phi_n(theta_j)).
/// aliased (optional) reports the anti-aliasing check.
cplx inner_product(const FarFieldPattern& v, int n, Vec2 center, bool* aliased = nullptr);

/// <v, phi_n> for n = -N..N at one centre (index n + N).
CVector inner_products(const FarFieldPattern& v, int truncation, Vec2 center, bool* aliased = nullptr);

}  // namespace onewave
