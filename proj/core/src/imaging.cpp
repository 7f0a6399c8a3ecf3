#include "onewave/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "onewave/error.hpp"

namespace onewave {

void Grid::validate() const {
    if (nx < 2 || ny < 2) throw ValidationError("grid needs at least 2 points per axis");
    if (!(x_max > x_min) || !(y_max > y_min)) throw ValidationError("grid bounds must be increasing");
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max)) {
        throw ValidationError("grid bounds must be finite");
    }
}

Vec2 Grid::point(std::size_t ix, std::size_t iy) const {
    return {x_min + static_cast<double>(ix) * dx(), y_min + static_cast<double>(iy) * dy()};
}

void ImagingConfig::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) throw ValidationError("k must be positive");
    if (!(R > 0.0) || !std::isfinite(R)) throw ValidationError("R must be positive");
    if (n_centers < 1) throw ValidationError("number of sampling centres N_z must be at least 1");
    if (n_radii < 1) throw ValidationError("number of radii M must be at least 1");
    if (delta <= 0.0 || !std::isfinite(delta)) throw ValidationError("threshold delta must be positive");
    RegularizationParams{alpha, truncation}.validate();
    if (truncation >= 199) throw ValidationError("truncation N must be below 199");
    grid.validate();
}

std::vector<Vec2> ImagingConfig::centers() const {
    std::vector<Vec2> out;
    for (std::size_t n = 0; n < n_centers; ++n) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(n_centers);
        out.push_back({R * std::cos(a), R * std::sin(a)});
    }
    return out;
}

std::vector<double> ImagingConfig::radii() const {
    std::vector<double> out;
    for (std::size_t m = 1; m <= n_radii; ++m) out.push_back(2.0 * R * static_cast<double>(m) / n_radii);
    return out;
}

namespace {

void require_match(const FarFieldPattern& u, const ImagingConfig& cfg) {
    cfg.validate();
    u.validate();
    if (std::abs(u.k - cfg.k) > 1e-12 * cfg.k) throw ValidationError("data wavenumber does not match config k");
}

// Eigenvalues lambda_{-N..N} for radius h.
CVector symmetric_eigenvalues(const ImagingConfig& cfg, double h) {
    const CVector run = disk_eigenvalue_run(cfg.truncation, cfg.k, h, cfg.bc);
    const int n = cfg.truncation;
    CVector out(2 * static_cast<std::size_t>(n) + 1);
    for (int j = -n; j <= n; ++j) out[j + n] = run[std::abs(j)];
    return out;
}

template <class Eval>
IndicatorField center_sum_field(const FarFieldPattern& u, const ImagingConfig& cfg, std::span<const Vec2> centers,
                                Eval eval) {
    require_match(u, cfg);
    if (centers.empty()) throw ValidationError("at least one sampling centre is required");
    std::vector<CVector> coeffs;
    for (const Vec2& z : centers) coeffs.push_back(inner_products(u, cfg.truncation, z));

    IndicatorField f{cfg.grid, std::vector<double>(cfg.grid.size(), 0.0), 0};
    const double h_floor = 1e-9 * cfg.R;
    std::vector<double> terms;
    for (std::size_t iy = 0; iy < cfg.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < cfg.grid.nx; ++ix) {
            const Vec2 x = cfg.grid.point(ix, iy);
            terms.clear();
            bool sentinel = false;
            for (std::size_t n = 0; n < centers.size(); ++n) {
                const double h = std::max(norm(x - centers[n]), h_floor);
                const double v = eval(coeffs[n], symmetric_eigenvalues(cfg, h));
                if (v == kIndicatorSentinel) {
                    sentinel = true;
                    break;
                }
                terms.push_back(v);
            }
            // Summing in sorted order makes the result independent of centre labels.
            std::sort(terms.begin(), terms.end());
            double sum = 0.0;
            for (double v : terms) sum += v;
            if (sentinel || !std::isfinite(sum)) {
                f.values[iy * cfg.grid.nx + ix] = kIndicatorSentinel;
                ++f.flagged;
            } else {
                f.values[iy * cfg.grid.nx + ix] = sum;
            }
        }
    }
    return f;
}

}  // namespace

RadiusThreshold radius_threshold(const FarFieldPattern& u, Vec2 center, const ImagingConfig& cfg) {
    require_match(u, cfg);
    const CVector c = inner_products(u, cfg.truncation, center);
    RadiusThreshold out;
    for (double h : cfg.radii()) {
        const IndicatorValue w = regularized_from_modes(c, symmetric_eigenvalues(cfg, h), cfg.alpha);
        if (w.value >= cfg.delta) {
            out.radius = h;
            out.degenerate_signal = w.degenerate_signal;
            return out;
        }
    }
    out.radius = 2.0 * cfg.R;
    out.out_of_range = true;
    return out;
}

SchemeOneResult scheme_one(const FarFieldPattern& u, const ImagingConfig& cfg) {
    require_match(u, cfg);
    SchemeOneResult out;
    out.grid = cfg.grid;
    out.centers = cfg.centers();
    for (const Vec2& z : out.centers) {
        out.thresholds.push_back(radius_threshold(u, z, cfg));
        out.radii.push_back(out.thresholds.back().radius);
    }
    out.mask.assign(cfg.grid.size(), 0);
    for (std::size_t iy = 0; iy < cfg.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < cfg.grid.nx; ++ix) {
            const Vec2 x = cfg.grid.point(ix, iy);
            bool inside = true;
            for (std::size_t n = 0; n < out.centers.size() && inside; ++n) {
                inside = norm(x - out.centers[n]) <= out.radii[n];
            }
            out.mask[iy * cfg.grid.nx + ix] = inside ? 1 : 0;
        }
    }
    return out;
}

IndicatorField scheme_two(const FarFieldPattern& u, const ImagingConfig& cfg) {
    return scheme_two(u, cfg, cfg.centers());
}

IndicatorField scheme_two(const FarFieldPattern& u, const ImagingConfig& cfg, std::span<const Vec2> centers) {
    return center_sum_field(u, cfg, centers, [&](const CVector& c, const CVector& lam) {
        return regularized_from_modes(c, lam, cfg.alpha).value;
    });
}

IndicatorField esm_field(const FarFieldPattern& u, const ImagingConfig& cfg) {
    return center_sum_field(u, cfg, cfg.centers(), [&](const CVector& c, const CVector& lam) {
        // Small norm means the disk contains the target, so invert to match scheme_two's orientation.
        const double g = esm_from_modes(c, lam, cfg.alpha);
        return g > 0.0 ? 1.0 / g : kIndicatorSentinel;
    });
}

IndicatorField classical_field(const ClassicalFactorization& fm, const Grid& grid) {
    grid.validate();
    IndicatorField f{grid, std::vector<double>(grid.size(), 0.0), 0};
    for (std::size_t iy = 0; iy < grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < grid.nx; ++ix) {
            const double v = fm.indicator(grid.point(ix, iy));
            if (v == kIndicatorSentinel) ++f.flagged;
            f.values[iy * grid.nx + ix] = v;
        }
    }
    return f;
}

IndicatorField normalize_field(const IndicatorField& f) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (double v : f.values) {
        if (v == kIndicatorSentinel || !std::isfinite(v)) continue;
        if (!any) {
            lo = hi = v;
            any = true;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!any || !(hi > lo)) throw ValidationError("cannot normalize a constant field");
    IndicatorField out = f;
    const double span = hi - lo;
    for (double& v : out.values) {
        v = (v == kIndicatorSentinel || !std::isfinite(v)) ? 1.0 : (v - lo) / span;
    }
    return out;
}

double region_contrast(const IndicatorField& normalized, const std::function<bool(Vec2)>& inside) {
    double sin = 0.0, sout = 0.0;
    std::size_t nin = 0, nout = 0;
    for (std::size_t iy = 0; iy < normalized.grid.ny; ++iy) {
        for (std::size_t ix = 0; ix < normalized.grid.nx; ++ix) {
            const double v = normalized.at(ix, iy);
            if (inside(normalized.grid.point(ix, iy))) {
                sin += v;
                ++nin;
            } else {
                sout += v;
                ++nout;
            }
        }
    }
    if (nin == 0 || nout == 0) throw ValidationError("region contrast needs points on both sides");
    return sout / static_cast<double>(nout) - sin / static_cast<double>(nin);
}

}  // namespace onewave
