#include "onewave/spectral.hpp"

#include <cmath>
#include <numbers>

#include "onewave/error.hpp"
#include "onewave/specfun.hpp"

namespace onewave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(std::string(what) + " must be positive and finite");
}

}  // namespace

cplx far_field_constant(double k) {
    return std::sqrt(2.0 / (k * kPi)) * std::exp(-kI * (kPi / 4.0));
}

CVector disk_eigenvalue_run(int n_max, double k, double h, const BoundaryCondition& bc, bool* dirichlet_hit) {
    require_positive(k, "wavenumber k");
    require_positive(h, "disk radius h");
    if (n_max < 0 || n_max >= kMaxCylinderOrder) throw DomainError("eigenvalue order outside supported range");

    const double t = k * h;
    const BesselRun run = bessel_jy_sequence(n_max + 1, t);
    const cplx scale = -2.0 * kPi * far_field_constant(k);
    bool hit = false;
    CVector out(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const cplx hn(run.j[n], run.y[n]);
        if (!bc.is_impedance()) {
            // J_n only has zeros for t > n; beyond that a small J_n is ordinary decay.
            if (n < t && std::abs(run.j[n]) < 1e-12) hit = true;
            out[n] = scale * (run.j[n] / hn);
            continue;
        }
        const double jm = n == 0 ? -run.j[1] : run.j[n - 1];
        const double ym = n == 0 ? -run.y[1] : run.y[n - 1];
        const double jd = 0.5 * (jm - run.j[n + 1]);
        const cplx hd(jd, 0.5 * (ym - run.y[n + 1]));
        const cplx eta = bc.eta();
        out[n] = scale * ((k * jd + eta * run.j[n]) / (k * hd + eta * hn));
    }
    if (dirichlet_hit) *dirichlet_hit = hit;
    return out;
}

cplx disk_eigenvalue(int n, double k, double h, const BoundaryCondition& bc, bool* dirichlet_hit) {
    const int m = std::abs(n);
    const CVector run = disk_eigenvalue_run(m, k, h, bc);
    if (dirichlet_hit) {
        *dirichlet_hit = !bc.is_impedance() && m < k * h &&
                         std::abs(cylinder(CylinderKind::BesselJ, m, k * h).value) < 1e-12;
    }
    return run[static_cast<std::size_t>(m)];
}

DiskSpectrum spectral_system(const TestDisk& disk, double k, int truncation) {
    if (truncation < 0) throw ValidationError("spectral truncation N must be non-negative");
    DiskSpectrum s;
    s.k = k;
    s.disk = disk;
    s.truncation = truncation;
    const CVector run = disk_eigenvalue_run(truncation, k, disk.radius, disk.bc, &s.dirichlet_hit);
    s.eigenvalues.resize(2 * static_cast<std::size_t>(truncation) + 1);
    for (int n = -truncation; n <= truncation; ++n) s.eigenvalues[n + truncation] = run[std::abs(n)];
    return s;
}

cplx eigenfunction_value(int n, Vec2 center, double k, Direction theta_hat) {
    const double th = theta_hat.theta();
    return std::exp(kI * (n * th - k * (center.x * std::cos(th) + center.y * std::sin(th))));
}

bool inner_product_aliased(std::size_t n_theta, int n, double k, Vec2 center) {
    const double need = 2.0 * (std::abs(n) + std::ceil(k * norm(center))) + 16.0;
    return static_cast<double>(n_theta) < need;
}

cplx inner_product(const FarFieldPattern& v, int n, Vec2 center, bool* aliased) {
    v.validate();
    if (aliased) *aliased = inner_product_aliased(v.n_theta(), n, v.k, center);
    cplx s{};
    for (std::size_t j = 0; j < v.n_theta(); ++j) s += v.values[j] * std::conj(eigenfunction_value(n, center, v.k, v.direction(j)));
    return (2.0 * kPi / static_cast<double>(v.n_theta())) * s;
}

CVector inner_products(const FarFieldPattern& v, int truncation, Vec2 center, bool* aliased) {
    v.validate();
    if (truncation < 0) throw ValidationError("spectral truncation N must be non-negative");
    if (aliased) *aliased = inner_product_aliased(v.n_theta(), truncation, v.k, center);
    const std::size_t nt = v.n_theta();
    // Shift the data to the disk centre once, then take the Fourier sums.
    CVector w(nt);
    std::vector<double> th(nt);
    for (std::size_t j = 0; j < nt; ++j) {
        th[j] = v.theta(j);
        w[j] = v.values[j] * std::exp(kI * (v.k * (center.x * std::cos(th[j]) + center.y * std::sin(th[j]))));
    }
    const double weight = 2.0 * kPi / static_cast<double>(nt);
    CVector out(2 * static_cast<std::size_t>(truncation) + 1);
    for (int n = -truncation; n <= truncation; ++n) {
        cplx s{};
        for (std::size_t j = 0; j < nt; ++j) s += w[j] * std::exp(-kI * (n * th[j]));
        out[n + truncation] = weight * s;
    }
    return out;
}

}  // namespace onewave
