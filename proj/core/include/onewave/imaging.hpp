#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "onewave/indicators.hpp"

namespace onewave {

/// Uniform grid including both end points on each axis; row iy = 0 is y_min.
struct Grid {
    double x_min = -1.0;
    double x_max = 1.0;
    double y_min = -1.0;
    double y_max = 1.0;
    std::size_t nx = 128;
    std::size_t ny = 128;

    void validate() const;
    Vec2 point(std::size_t ix, std::size_t iy) const;
    double dx() const { return nx > 1 ? (x_max - x_min) / static_cast<double>(nx - 1) : 0.0; }
    double dy() const { return ny > 1 ? (y_max - y_min) / static_cast<double>(ny - 1) : 0.0; }
    std::size_t size() const { return nx * ny; }
};

struct ImagingConfig {
    double k = 6.0;
    double R = 4.0;
    std::size_t n_centers = 8;
    std::size_t n_radii = 160;
    int truncation = 60;
    double alpha = 1e-13;
    double delta = 4e-4;
    BoundaryCondition bc;
    Grid grid{-4.0, 4.0, -4.0, 4.0, 128, 128};

    void validate() const;
    /// z_n = R (cos 2 pi n / N_z, sin 2 pi n / N_z), n = 0..N_z-1.
    std::vector<Vec2> centers() const;
    /// h_m = 2 m R / M, m = 1..M.
    std::vector<double> radii() const;
};

struct IndicatorField {
    Grid grid;
    std::vector<double> values;  ///< row-major, n_y rows of n_x values
    std::size_t flagged = 0;     ///< points holding the sentinel value

    double at(std::size_t ix, std::size_t iy) const { return values[iy * grid.nx + ix]; }
};

struct RadiusThreshold {
    double radius = 0.0;
    bool out_of_range = false;     ///< no h_m met delta; radius is 2R
    bool degenerate_signal = false;
};

struct SchemeOneResult {
    Grid grid;
    std::vector<Vec2> centers;
    std::vector<double> radii;
    std::vector<RadiusThreshold> thresholds;
    std::vector<std::uint8_t> mask;  ///< 1 inside every disk B_{h_n}(z_n)
};

/// Smallest h_m with regularized indicator >= delta (first crossing scanning upward).
RadiusThreshold radius_threshold(const FarFieldPattern& u, Vec2 center, const ImagingConfig& cfg);

SchemeOneResult scheme_one(const FarFieldPattern& u, const ImagingConfig& cfg);

/// values(x) = sum_n W(z_n, |x - z_n|) at continuous radii.
IndicatorField scheme_two(const FarFieldPattern& u, const ImagingConfig& cfg);
/// Same with explicit sampling centres in place of cfg.centers().
IndicatorField scheme_two(const FarFieldPattern& u, const ImagingConfig& cfg, std::span<const Vec2> centers);

/// Indicator field of the ESM variant, same layout as scheme_two.
IndicatorField esm_field(const FarFieldPattern& u, const ImagingConfig& cfg);

/// Classical multi-wave indicator sampled on a grid.
IndicatorField classical_field(const ClassicalFactorization& fm, const Grid& grid);

/// Affine map of the finite values onto [0, 1]; sentinel values become 1.
IndicatorField normalize_field(const IndicatorField& f);

/// Mean of the normalized field outside minus mean inside the region.
double region_contrast(const IndicatorField& normalized, const std::function<bool(Vec2)>& inside);

}  // namespace onewave
