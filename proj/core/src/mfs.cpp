#include "onewave/mfs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "onewave/error.hpp"
#include "onewave/specfun.hpp"

namespace onewave {

namespace {

constexpr cplx kI{0.0, 1.0};

Vec2 unit_vector(Vec2 v) { return (1.0 / norm(v)) * v; }

Vec2 centroid(const std::vector<Vec2>& v) {
    // Area centroid of a simple polygon.
    double a = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 p = v[i], q = v[(i + 1) % v.size()];
        const double c = cross(p, q);
        a += c;
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    return {cx / (3.0 * a), cy / (3.0 * a)};
}

// n points per unit length spread over the perimeter at edge midpoint-rule positions.
std::vector<Vec2> perimeter_points(const std::vector<Vec2>& v, std::size_t total) {
    double perimeter = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) perimeter += norm(v[(i + 1) % v.size()] - v[i]);
    std::vector<Vec2> out;
    out.reserve(total + v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 p = v[i], q = v[(i + 1) % v.size()];
        const double share = norm(q - p) / perimeter * static_cast<double>(total);
        const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(share)));
        for (std::size_t j = 0; j < n; ++j) {
            const double s = (static_cast<double>(j) + 0.5) / static_cast<double>(n);
            out.push_back(p + s * (q - p));
        }
    }
    return out;
}

}  // namespace

void MfsConfig::validate() const {
    if (!(bulk_scale > 0.0 && bulk_scale < 1.0)) throw ValidationError("MFS bulk_scale must lie in (0, 1)");
    if (bulk_charges < 3) throw ValidationError("MFS needs at least 3 bulk charges");
    if (!(corner_sigma > 0.0)) throw ValidationError("MFS corner_sigma must be positive");
    if (!(corner_depth > 0.0 && corner_depth < 1.0)) throw ValidationError("MFS corner_depth must lie in (0, 1)");
    if (corner_order < 0 || corner_order > 8) throw ValidationError("MFS corner_order must lie in [0, 8]");
    if (collocation_factor < 1) throw ValidationError("MFS collocation_factor must be at least 1");
    if (!(cutoff > 0.0 && cutoff < 1.0)) throw ValidationError("MFS cutoff must lie in (0, 1)");
    if (!(residual_tolerance > 0.0)) throw ValidationError("MFS residual_tolerance must be positive");
    if (check_points < 3) throw ValidationError("MFS needs at least 3 check points");
}

MfsSolver::MfsSolver(const PolygonObstacle& obstacle, double k, const MfsConfig& config)
    : k_(k), vertices_(obstacle.vertices) {
    if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("wavenumber k must be positive and finite");
    require_convex_ccw(vertices_);
    config.validate();

    const std::size_t nv = vertices_.size();
    const Vec2 c0 = centroid(vertices_);

    for (const Vec2& p : perimeter_points(vertices_, config.bulk_charges)) {
        basis_.push_back({c0 + config.bulk_scale * (p - c0), 0});
    }
    collocation_ = perimeter_points(vertices_, config.bulk_charges * config.collocation_factor);

    const double n = static_cast<double>(config.corner_poles);
    for (std::size_t i = 0; i < nv && config.corner_poles > 0; ++i) {
        const Vec2 corner = vertices_[i];
        const Vec2 prev = vertices_[(i + nv - 1) % nv];
        const Vec2 next = vertices_[(i + 1) % nv];
        const Vec2 to_prev = unit_vector(prev - corner);
        const Vec2 to_next = unit_vector(next - corner);
        const double interior = std::acos(std::clamp(dot(to_prev, to_next), -1.0, 1.0));
        if (interior > config.flat_corner_angle) continue;

        const Vec2 bisector = unit_vector(to_prev + to_next);
        const double depth = config.corner_depth * norm(c0 - corner);
        const double edge_room = 0.5 * std::min(norm(prev - corner), norm(next - corner));
        for (std::size_t j = 1; j <= config.corner_poles; ++j) {
            const double dist = depth * std::exp(-config.corner_sigma * (std::sqrt(n) - std::sqrt(double(j))));
            const Vec2 pole = corner + dist * bisector;
            for (int m = -config.corner_order; m <= config.corner_order; ++m) basis_.push_back({pole, m});
            for (double f : {1.0, 1.5, 0.7, 0.4}) {
                if (f * dist >= edge_room) continue;
                collocation_.push_back(corner + (f * dist) * to_prev);
                collocation_.push_back(corner + (f * dist) * to_next);
            }
        }
    }

    check_ = perimeter_points(vertices_, config.check_points);
    check_matrix_ = ComplexMatrix(check_.size(), basis_.size());
    for (std::size_t r = 0; r < check_.size(); ++r)
        for (std::size_t c = 0; c < basis_.size(); ++c) check_matrix_(r, c) = basis_value(basis_[c], check_[r]);

    ComplexMatrix a(collocation_.size(), basis_.size());
    for (std::size_t r = 0; r < collocation_.size(); ++r)
        for (std::size_t c = 0; c < basis_.size(); ++c) a(r, c) = basis_value(basis_[c], collocation_[r]);
    column_scale_.assign(basis_.size(), 1.0);
    for (std::size_t c = 0; c < basis_.size(); ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < a.rows(); ++r) s += std::norm(a(r, c));
        column_scale_[c] = s > 0.0 ? 1.0 / std::sqrt(s) : 1.0;
        for (std::size_t r = 0; r < a.rows(); ++r) a(r, c) *= column_scale_[c];
    }
    if (!a.all_finite()) throw NumericalError("MFS system matrix is not finite");
    solver_ = TruncatedSvdSolver(a, config.cutoff);
}

cplx MfsSolver::basis_value(const Basis& b, Vec2 x) const {
    const Vec2 d = x - b.pole;
    const double r = norm(d);
    const int m = std::abs(b.order);
    const BesselRun run = bessel_jy_sequence(std::max(m, 1), k_ * r);
    cplx v = 0.25 * kI * cplx(run.j[m], run.y[m]);
    if (b.order != 0) v *= std::exp(kI * (b.order * std::atan2(d.y, d.x)));
    return v;
}

CVector MfsSolver::solve(Direction incident) const {
    const Vec2 d = incident.unit();
    CVector rhs(collocation_.size());
    for (std::size_t r = 0; r < collocation_.size(); ++r) rhs[r] = -std::exp(kI * (k_ * dot(collocation_[r], d)));
    CVector coef = solver_.solve(rhs);
    for (std::size_t c = 0; c < coef.size(); ++c) coef[c] *= column_scale_[c];
    return coef;
}

cplx MfsSolver::scattered_field(const CVector& coef, Vec2 x) const {
    if (coef.size() != basis_.size()) throw ValidationError("MFS coefficient vector has wrong length");
    cplx s{};
    for (std::size_t c = 0; c < basis_.size(); ++c) s += coef[c] * basis_value(basis_[c], x);
    return s;
}

FarFieldPattern MfsSolver::far_field(const CVector& coef, std::size_t n_theta) const {
    if (coef.size() != basis_.size()) throw ValidationError("MFS coefficient vector has wrong length");
    if (n_theta < kMinAngles) throw ValidationError("n_theta must be at least 16");
    const cplx gamma = far_field_gamma(k_);
    FarFieldPattern u{k_, CVector(n_theta)};
    for (std::size_t j = 0; j < n_theta; ++j) {
        const double th = u.theta(j);
        const Vec2 xh{std::cos(th), std::sin(th)};
        cplx s{};
        for (std::size_t c = 0; c < basis_.size(); ++c) {
            const int m = basis_[c].order;
            // (i/4) H_|m| e^{i m phi} radiates gamma (-i)^|m| e^{i m theta}
            cplx w = std::exp(-kI * (k_ * dot(xh, basis_[c].pole)));
            if (m != 0) w *= std::pow(-kI, std::abs(m)) * std::exp(kI * (m * th));
            s += coef[c] * w;
        }
        u.values[j] = gamma * s;
    }
    return u;
}

double MfsSolver::boundary_residual(const CVector& coef, Direction incident) const {
    if (coef.size() != basis_.size()) throw ValidationError("MFS coefficient vector has wrong length");
    const Vec2 d = incident.unit();
    const CVector us = multiply(check_matrix_, coef);
    double worst = 0.0;
    for (std::size_t r = 0; r < check_.size(); ++r) {
        worst = std::max(worst, std::abs(us[r] + std::exp(kI * (k_ * dot(check_[r], d)))));
    }
    return worst;
}

FarFieldPattern polygon_obstacle_far_field(const PolygonObstacle& obstacle, double k, Direction incident,
                                           std::size_t n_theta, const MfsConfig& config, double* residual) {
    const MfsSolver solver(obstacle, k, config);
    const CVector coef = solver.solve(incident);
    const double res = solver.boundary_residual(coef, incident);
    if (residual) *residual = res;
    if (!(res <= config.residual_tolerance)) {
        throw NumericalError("MFS boundary residual " + std::to_string(res) + " exceeds tolerance " +
                             std::to_string(config.residual_tolerance));
    }
    return solver.far_field(coef, n_theta);
}

}  // namespace onewave
