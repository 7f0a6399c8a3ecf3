#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace onewave {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Observation or incidence direction on the unit circle, angle kept in [0, 2pi).
class Direction {
public:
    Direction() = default;
    explicit Direction(double theta);

    double theta() const { return theta_; }
    Vec2 unit() const { return {std::cos(theta_), std::sin(theta_)}; }
    Direction opposite() const { return Direction(theta_ + std::numbers::pi); }

private:
    double theta_ = 0.0;
};

inline Direction::Direction(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    theta_ = t;
}

/// Signed area of a closed polygon (positive for counter-clockwise order).
double signed_area(std::span<const Vec2> polygon);

/// Throws ValidationError unless the vertices form a strictly convex,
/// counter-clockwise polygon with at least three distinct vertices.
void require_convex_ccw(std::span<const Vec2> polygon);

bool point_in_convex_polygon(std::span<const Vec2> polygon, Vec2 p);

/// Euclidean distance from p to the closed convex polygon (0 inside).
double distance_to_convex_polygon(std::span<const Vec2> polygon, Vec2 p);

/// Convex hull in counter-clockwise order (collinear points dropped).
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

double distance_to_segment(Vec2 a, Vec2 b, Vec2 p);

}  // namespace onewave
