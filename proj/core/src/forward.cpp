#include "onewave/forward.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "onewave/error.hpp"
#include "onewave/mfs.hpp"
#include "onewave/specfun.hpp"

namespace onewave {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

void require_wavenumber(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("wavenumber k must be positive and finite");
}

void require_angles(std::size_t n_theta) {
    if (n_theta < kMinAngles) {
        throw ValidationError("n_theta must be at least " + std::to_string(kMinAngles));
    }
}

// sinc(x) = sin(x)/x
double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}

// Divided difference of G(s) = -exp(-i s) on two nodes.
cplx divided2(double x, double y) {
    return kI * std::exp(-kI * (0.5 * (x + y))) * sinc(0.5 * (x - y));
}

}  // namespace

double FarFieldPattern::theta(std::size_t j) const {
    return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(values.size());
}

void FarFieldPattern::validate() const {
    require_wavenumber(k);
    require_angles(values.size());
    for (const cplx& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ValidationError("far-field pattern contains non-finite values");
        }
    }
}

BoundaryCondition BoundaryCondition::impedance(cplx eta) {
    if (!std::isfinite(eta.real()) || !std::isfinite(eta.imag())) {
        throw ValidationError("impedance eta must be finite");
    }
    if (eta.imag() < 0.0) throw ValidationError("impedance eta must have Im(eta) >= 0");
    BoundaryCondition bc;
    bc.impedance_ = true;
    bc.eta_ = eta;
    return bc;
}

void validate_scene(const Scene& scene) {
    struct Visitor {
        void operator()(const PointScatterers& s) const {
            for (const Vec2& p : s.points) {
                if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ValidationError("non-finite scatterer position");
            }
        }
        void operator()(const DiskObstacle& d) const {
            if (!(d.radius > 0.0) || !std::isfinite(d.radius)) throw ValidationError("disk radius must be positive");
        }
        void operator()(const PolygonSource& s) const {
            require_convex_ccw(s.vertices);
            if (!std::isfinite(s.density.real()) || !std::isfinite(s.density.imag())) {
                throw ValidationError("source density must be finite");
            }
        }
        void operator()(const PolygonObstacle& o) const { require_convex_ccw(o.vertices); }
    };
    std::visit(Visitor{}, scene);
}

cplx far_field_gamma(double k) {
    return std::exp(kI * (kPi / 4.0)) / std::sqrt(8.0 * kPi * k);
}

FarFieldPattern point_far_field(std::span<const Vec2> points, double k, std::size_t n_theta) {
    require_wavenumber(k);
    require_angles(n_theta);
    if (points.empty()) throw ValidationError("point_far_field: no scatterers given");
    FarFieldPattern u{k, CVector(n_theta)};
    for (std::size_t j = 0; j < n_theta; ++j) {
        const Vec2 xh = u.direction(j).unit();
        cplx s{};
        for (const Vec2& z : points) s += std::exp(-kI * (k * dot(z, xh)));
        u.values[j] = s;
    }
    return u;
}

FarFieldPattern disk_far_field(const DiskObstacle& disk, double k, Direction incident, std::size_t n_theta,
                               int truncation, DiskSeriesInfo* info) {
    require_wavenumber(k);
    require_angles(n_theta);
    validate_scene(disk);
    if (truncation > kMaxCylinderOrder - 1) throw ValidationError("disk_far_field: truncation too large");

    const double t = k * disk.radius;
    const int top = truncation > 0 ? truncation : kMaxDiskTruncation;
    const BesselRun run = bessel_jy_sequence(top + 1, t);

    auto ratio = [&](int n) -> cplx {
        const cplx h(run.j[n], run.y[n]);
        if (!disk.bc.is_impedance()) return run.j[n] / h;
        // C'_n = (C_{n-1} - C_{n+1}) / 2 with C_{-1} = -C_1
        const double jm = n == 0 ? -run.j[1] : run.j[n - 1];
        const double ym = n == 0 ? -run.y[1] : run.y[n - 1];
        const double jd = 0.5 * (jm - run.j[n + 1]);
        const cplx hd(jd, 0.5 * (ym - run.y[n + 1]));
        const cplx eta = disk.bc.eta();
        return (k * jd + eta * run.j[n]) / (k * hd + eta * h);
    };

    int n_used = top;
    bool reached = true;
    if (truncation <= 0) {
        reached = false;
        for (int n = static_cast<int>(std::ceil(t)); n <= kMaxDiskTruncation; ++n) {
            if (std::abs(ratio(n)) < 1e-16) {
                n_used = n;
                reached = true;
                break;
            }
        }
    }
    if (info) *info = {n_used, reached};

    std::vector<cplx> r(static_cast<std::size_t>(n_used) + 1);
    for (int n = 0; n <= n_used; ++n) r[n] = ratio(n);

    const cplx c = std::sqrt(2.0 / (k * kPi)) * std::exp(-kI * (kPi / 4.0));
    const Vec2 d = incident.unit();
    const bool centered = disk.center == Vec2{};
    FarFieldPattern u{k, CVector(n_theta)};
    for (std::size_t j = 0; j < n_theta; ++j) {
        const double th = u.theta(j);
        const double phi = th - incident.theta();
        cplx s = r[0];
        for (int n = 1; n <= n_used; ++n) s += 2.0 * r[n] * std::cos(n * phi);
        cplx v = -c * s;
        if (!centered) {
            const Vec2 xh{std::cos(th), std::sin(th)};
            v *= std::exp(kI * (k * dot(disk.center, d - xh)));
        }
        u.values[j] = v;
    }
    return u;
}

cplx triangle_exp_integral(Vec2 v1, Vec2 v2, Vec2 v3, Vec2 q) {
    const double area = 0.5 * std::abs(cross(v2 - v1, v3 - v1));
    if (!(area > 1e-12)) throw ValidationError("triangle_exp_integral: degenerate triangle");

    std::array<double, 3> a{dot(q, v1), dot(q, v2), dot(q, v3)};
    std::sort(a.begin(), a.end());

    // Integral = 2 A G[a1, a2, a3], G(s) = -exp(-i s), G[.] the divided difference.
    cplx g;
    if (a[2] - a[0] < 1.0) {
        const double m = (a[0] + a[1] + a[2]) / 3.0;
        const double d1 = a[0] - m, d2 = a[1] - m, d3 = a[2] - m;
        // Complete homogeneous polynomials h_k(d1, d2, d3) built variable by variable.
        double h1 = 1.0, h2 = 1.0, h3 = 1.0;
        cplx sum = 0.5;  // k = 0: h_0 / 2!
        cplx phase = 1.0;
        double fact = 2.0;
        // |h_k| <= C(k+2, 2) r^k, so stop once that bound drops below rounding.
        const double r = std::max({std::abs(d1), std::abs(d2), std::abs(d3)});
        double rk = 1.0;
        for (int kk = 1; kk < 40; ++kk) {
            h1 *= d1;
            h2 = h2 * d2 + h1;
            h3 = h3 * d3 + h2;
            phase *= -kI;
            fact *= (kk + 2);
            rk *= r;
            sum += phase * (h3 / fact);
            if (0.5 * (kk + 1) * (kk + 2) * rk / fact < 1e-18) break;
        }
        g = std::exp(-kI * m) * sum;
    } else {
        g = (divided2(a[1], a[2]) - divided2(a[0], a[1])) / (a[2] - a[0]);
    }
    return 2.0 * area * g;
}

FarFieldPattern polygon_source_far_field(const PolygonSource& source, double k, std::size_t n_theta) {
    require_wavenumber(k);
    require_angles(n_theta);
    validate_scene(source);
    const cplx gamma = source.normalization == SourceNormalization::Standard ? far_field_gamma(k) : kI / 4.0;
    const cplx scale = gamma * source.density;
    const auto& v = source.vertices;
    FarFieldPattern u{k, CVector(n_theta)};
    for (std::size_t j = 0; j < n_theta; ++j) {
        const Vec2 q = k * u.direction(j).unit();
        cplx s{};
        for (std::size_t t = 1; t + 1 < v.size(); ++t) s += triangle_exp_integral(v[0], v[t], v[t + 1], q);
        u.values[j] = scale * s;
    }
    return u;
}

FarFieldPattern scene_far_field(const Scene& scene, double k, Direction incident, std::size_t n_theta) {
    validate_scene(scene);
    if (const auto* p = std::get_if<PointScatterers>(&scene)) return point_far_field(p->points, k, n_theta);
    if (const auto* d = std::get_if<DiskObstacle>(&scene)) return disk_far_field(*d, k, incident, n_theta);
    if (const auto* s = std::get_if<PolygonSource>(&scene)) return polygon_source_far_field(*s, k, n_theta);
    return polygon_obstacle_far_field(std::get<PolygonObstacle>(scene), k, incident, n_theta);
}

ComplexMatrix multistatic_matrix(const Scene& scene, double k, std::size_t n_theta) {
    require_wavenumber(k);
    require_angles(n_theta);
    validate_scene(scene);
    ComplexMatrix f(n_theta, n_theta);
    const double w = 2.0 * kPi / static_cast<double>(n_theta);
    auto put_column = [&](std::size_t q, const FarFieldPattern& u) {
        for (std::size_t p = 0; p < n_theta; ++p) f(p, q) = w * u.values[p];
    };
    auto incident = [&](std::size_t q) { return Direction(2.0 * kPi * static_cast<double>(q) / n_theta); };

    if (const auto* pts = std::get_if<PointScatterers>(&scene)) {
        // Strength of each scatterer follows the incident wave: c_m(d) = exp(i k z_m . d).
        for (std::size_t q = 0; q < n_theta; ++q) {
            const Vec2 dq = incident(q).unit();
            for (std::size_t p = 0; p < n_theta; ++p) {
                const Vec2 xh = incident(p).unit();
                cplx s{};
                for (const Vec2& z : pts->points) s += std::exp(kI * (k * dot(z, dq - xh)));
                f(p, q) = w * s;
            }
        }
        return f;
    }
    if (const auto* obstacle = std::get_if<PolygonObstacle>(&scene)) {
        const MfsSolver solver(*obstacle, k);
        for (std::size_t q = 0; q < n_theta; ++q) {
            const CVector coef = solver.solve(incident(q));
            const double res = solver.boundary_residual(coef, incident(q));
            if (res > MfsConfig{}.residual_tolerance) {
                throw NumericalError("MFS boundary residual " + std::to_string(res) + " exceeds tolerance");
            }
            put_column(q, solver.far_field(coef, n_theta));
        }
        return f;
    }
    if (const auto* d = std::get_if<DiskObstacle>(&scene)) {
        // One radial solve; off-centre phases only depend on the directions.
        const DiskObstacle centered{{0.0, 0.0}, d->radius, d->bc};
        const FarFieldPattern base = disk_far_field(centered, k, Direction(0.0), n_theta);
        for (std::size_t q = 0; q < n_theta; ++q) {
            const Vec2 dq = incident(q).unit();
            for (std::size_t p = 0; p < n_theta; ++p) {
                const std::size_t shift = (p + n_theta - q) % n_theta;
                cplx v = base.values[shift];
                if (!(d->center == Vec2{})) {
                    const Vec2 xh = incident(p).unit();
                    v *= std::exp(kI * (k * dot(d->center, dq - xh)));
                }
                f(p, q) = w * v;
            }
        }
        return f;
    }
    for (std::size_t q = 0; q < n_theta; ++q) put_column(q, scene_far_field(scene, k, incident(q), n_theta));
    return f;
}

FarFieldPattern add_noise(const FarFieldPattern& u, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0 && delta < 1.0)) throw ValidationError("noise level delta must lie in [0, 1)");
    FarFieldPattern out = u;
    if (delta == 0.0) return out;
    std::mt19937_64 gen(seed);
    for (cplx& v : out.values) {
        // 53 random bits -> [0, 1) -> [-1, 1), independent of the library's distributions
        const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        v *= 1.0 + delta * (2.0 * unit - 1.0);
    }
    return out;
}

}  // namespace onewave
