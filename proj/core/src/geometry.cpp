#include "onewave/geometry.hpp"

#include <algorithm>
#include <limits>

#include "onewave/error.hpp"

namespace onewave {

double signed_area(std::span<const Vec2> polygon) {
    double twice = 0.0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        twice += cross(polygon[i], polygon[(i + 1) % n]);
    }
    return 0.5 * twice;
}

void require_convex_ccw(std::span<const Vec2> polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (polygon[i] == polygon[j]) throw ValidationError("polygon has repeated vertices");
        }
    }
    double scale = 0.0;
    for (const Vec2& v : polygon) scale = std::max(scale, norm(v));
    const double tol = 1e-14 * std::max(1.0, scale * scale);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[(i + 1) % n];
        const Vec2 c = polygon[(i + 2) % n];
        if (cross(b - a, c - b) <= tol) {
            throw ValidationError("polygon must be strictly convex and counter-clockwise");
        }
    }
    // A star-shaped turn sequence can wind twice; the area test rules that out.
    double turning = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e1 = polygon[(i + 1) % n] - polygon[i];
        const Vec2 e2 = polygon[(i + 2) % n] - polygon[(i + 1) % n];
        turning += std::atan2(cross(e1, e2), dot(e1, e2));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6) {
        throw ValidationError("polygon must be strictly convex and counter-clockwise");
    }
}

bool point_in_convex_polygon(std::span<const Vec2> polygon, Vec2 p) {
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i];
        const Vec2 b = polygon[(i + 1) % n];
        if (cross(b - a, p - a) < 0.0) return false;
    }
    return true;
}

double distance_to_segment(Vec2 a, Vec2 b, Vec2 p) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

double distance_to_convex_polygon(std::span<const Vec2> polygon, Vec2 p) {
    if (polygon.size() >= 3 && point_in_convex_polygon(polygon, p)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = polygon.size();
    if (n == 1) return norm(p - polygon[0]);
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, distance_to_segment(polygon[i], polygon[(i + 1) % n], p));
    }
    return best;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
    std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) return points;

    std::vector<Vec2> hull(2 * points.size());
    std::size_t k = 0;
    for (const Vec2& p : points) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = points.rbegin() + 1; it != points.rend(); ++it) {
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], *it - hull[k - 2]) <= 0.0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace onewave
