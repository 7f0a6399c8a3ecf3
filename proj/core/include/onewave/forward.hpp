#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "onewave/geometry.hpp"
#include "onewave/linalg.hpp"

namespace onewave {

/// Samples of a far-field pattern at theta_j = 2 pi j / n_theta.
struct FarFieldPattern {
    double k = 0.0;
    CVector values;

    std::size_t n_theta() const { return values.size(); }
    double theta(std::size_t j) const;
    Direction direction(std::size_t j) const { return Direction(theta(j)); }

    /// Throws ValidationError unless k > 0, n_theta >= 16 and all values are finite.
    void validate() const;
};

inline constexpr std::size_t kMinAngles = 16;

class BoundaryCondition {
public:
    static BoundaryCondition sound_soft() { return {}; }
    /// Requires Im(eta) >= 0.
    static BoundaryCondition impedance(cplx eta);

    bool is_impedance() const { return impedance_; }
    cplx eta() const { return eta_; }

private:
    bool impedance_ = false;
    cplx eta_{};
};

struct PointScatterers {
    std::vector<Vec2> points;
};

struct DiskObstacle {
    Vec2 center;
    double radius = 1.0;
    BoundaryCondition bc;
};

/// Standard uses e^{i pi/4}/sqrt(8 pi k); PaperLiteral uses i/4.
enum class SourceNormalization { Standard, PaperLiteral };

struct PolygonSource {
    std::vector<Vec2> vertices;
    cplx density{1.0, 0.0};
    SourceNormalization normalization = SourceNormalization::Standard;
};

/// Sound-soft convex polygon.
struct PolygonObstacle {
    std::vector<Vec2> vertices;
};

using Scene = std::variant<PointScatterers, DiskObstacle, PolygonSource, PolygonObstacle>;

void validate_scene(const Scene& scene);

/// Far-field coefficient e^{i pi/4}/sqrt(8 pi k) of the outgoing fundamental solution.
cplx far_field_gamma(double k);

/// sum_m exp(-i k z_m . xhat), one unit-strength scatterer per point.
FarFieldPattern point_far_field(std::span<const Vec2> points, double k, std::size_t n_theta);

struct DiskSeriesInfo {
    int truncation = 0;
    bool tail_bound_reached = true;
};

inline constexpr int kMaxDiskTruncation = 150;

/// Exact series for the plane-wave far field of a disk. truncation <= 0 picks the
/// smallest N >= kh with |r_N| < 1e-16 (capped at 150, reported through info).
FarFieldPattern disk_far_field(const DiskObstacle& disk, double k, Direction incident, std::size_t n_theta,
                               int truncation = 0, DiskSeriesInfo* info = nullptr);

/// Integral of exp(-i q.z) over the triangle (v1, v2, v3).
cplx triangle_exp_integral(Vec2 v1, Vec2 v2, Vec2 v3, Vec2 q);

FarFieldPattern polygon_source_far_field(const PolygonSource& source, double k, std::size_t n_theta);

/// Far field of any scene for one incident direction. Sources and point
/// scatterers (unit strength) ignore the direction.
FarFieldPattern scene_far_field(const Scene& scene, double k, Direction incident, std::size_t n_theta);

/// F(p, q) = u_inf(theta_p; d = theta_q) * 2 pi / n_theta. Point scatterers take
/// the strength exp(i k z_m . d) of the incident wave at their position; an empty
/// point list gives the zero matrix.
ComplexMatrix multistatic_matrix(const Scene& scene, double k, std::size_t n_theta);

/// values_j * (1 + delta kappa_j), kappa_j uniform on [-1, 1] from a seeded mt19937_64.
FarFieldPattern add_noise(const FarFieldPattern& u, double delta, std::uint64_t seed);

}  // namespace onewave
