#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

#include "onewave/forward.hpp"

namespace onewave {

/// Layout of the method of fundamental solutions for sound-soft convex polygons.
///
/// Monopoles sit on a copy of the boundary shrunk toward the centroid. Each
/// corner additionally gets a "lightning" cluster of poles on its interior
/// bisector, exponentially graded toward the vertex, each carrying H_0 and
/// H_1 e^{+-i phi} terms to resolve the corner singularity.
struct MfsConfig {
    double bulk_scale = 0.9;
    std::size_t bulk_charges = 160;
    std::size_t corner_poles = 16;
    double corner_sigma = 4.0;
    double corner_depth = 0.25;  ///< outermost pole, as a fraction of the corner-to-centroid distance
    int corner_order = 1;        ///< multipole orders -corner_order..corner_order per pole
    double flat_corner_angle = 0.9 * std::numbers::pi;  ///< no poles at corners with a larger interior angle
    std::size_t collocation_factor = 3;
    double cutoff = 1e-8;
    double residual_tolerance = 1e-3;
    std::size_t check_points = 512;

    void validate() const;
};

class MfsSolver {
public:
    MfsSolver(const PolygonObstacle& obstacle, double k, const MfsConfig& config = {});

    /// Basis coefficients for the incident plane wave exp(i k x.d).
    CVector solve(Direction incident) const;
    cplx scattered_field(const CVector& coef, Vec2 x) const;
    FarFieldPattern far_field(const CVector& coef, std::size_t n_theta) const;
    /// max |u^s + u^i| over evenly spaced boundary check points (max |u^i| = 1).
    double boundary_residual(const CVector& coef, Direction incident) const;

    std::size_t basis_size() const { return basis_.size(); }
    std::size_t collocation_size() const { return collocation_.size(); }
    std::size_t rank() const { return solver_.rank(); }

private:
    struct Basis {
        Vec2 pole;
        int order;
    };

    cplx basis_value(const Basis& b, Vec2 x) const;

    double k_;
    std::vector<Vec2> vertices_;
    std::vector<Basis> basis_;
    std::vector<Vec2> collocation_;
    std::vector<Vec2> check_;
    ComplexMatrix check_matrix_;
    std::vector<double> column_scale_;
    TruncatedSvdSolver solver_;
};

/// Solves, gates on the boundary residual (NumericalError when it exceeds the
/// configured tolerance) and returns the far field.
FarFieldPattern polygon_obstacle_far_field(const PolygonObstacle& obstacle, double k, Direction incident,
                                           std::size_t n_theta, const MfsConfig& config = {},
                                           double* residual = nullptr);

}  // namespace onewave
