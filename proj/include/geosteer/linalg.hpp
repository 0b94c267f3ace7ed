#pragma once

#include <cmath>

namespace geosteer {

/// Plain 2-vector used for frame values, brackets and state differences.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm2(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }

/// Row-major 2x2 matrix.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0;
    double a21 = 0.0, a22 = 0.0;

    Vec2 operator*(const Vec2& v) const {
        return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
    }
    Mat2 transpose() const { return {a11, a21, a12, a22}; }
    double det() const { return a11 * a22 - a12 * a21; }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
};

/// Solve A x = b for a 2x2 system. Caller guarantees |det A| is usable.
inline Vec2 solve2x2(const Mat2& a, const Vec2& b) {
    const double d = a.det();
    return {(b.x * a.a22 - b.y * a.a12) / d, (a.a11 * b.y - a.a21 * b.x) / d};
}

}  // namespace geosteer
