#pragma once

#include <cmath>

namespace symflat {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

using Point2 = Vec2;

inline Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
inline Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
inline Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
inline Vec2 operator*(double s, Vec2 a) { return a *= s; }
inline Vec2 operator*(Vec2 a, double s) { return a *= s; }
inline Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
inline bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& a) { return dot(a, a); }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
// counter-clockwise quarter turn
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }
inline Vec2 unit_from_angle(double t) { return {std::cos(t), std::sin(t)}; }
inline bool is_finite(const Vec2& a) { return std::isfinite(a.x) && std::isfinite(a.y); }

// Affine line in canonical form: theta in [0, pi), anchor is the foot of
// the perpendicular dropped from the origin.
class Line {
public:
    Line() = default;

    static Line through(const Point2& p, double theta);
    static Line through_points(const Point2& a, const Point2& b);

    double theta() const { return theta_; }
    const Vec2& direction() const { return dir_; }
    const Point2& anchor() const { return anchor_; }
    Vec2 normal() const { return perp(dir_); }
    // signed offset of the line along normal()
    double offset() const { return dot(anchor_, normal()); }

    double signed_distance(const Point2& p) const { return dot(p - anchor_, normal()); }
    double distance(const Point2& p) const { return std::abs(signed_distance(p)); }
    Point2 project(const Point2& p) const { return anchor_ + dot(p - anchor_, dir_) * dir_; }

private:
    double theta_ = 0.0;
    Vec2 dir_{1.0, 0.0};
    Point2 anchor_{};
};

}  // namespace symflat
