#pragma once
#include <cmath>
#include <cstdio>
#include <string>

namespace crosscap {

struct Vec2 {
    double u = 0.0;
    double v = 0.0;

    Vec2 operator+(Vec2 o) const { return {u + o.u, v + o.v}; }
    Vec2 operator-(Vec2 o) const { return {u - o.u, v - o.v}; }
    Vec2 operator*(double s) const { return {u * s, v * s}; }
    double norm() const { return std::hypot(u, v); }
};

inline double dot(Vec2 a, Vec2 b) { return a.u * b.u + a.v * b.v; }
inline double cross(Vec2 a, Vec2 b) { return a.u * b.v - a.v * b.u; }

// 2x2 matrix, row major.
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    Vec2 apply(Vec2 x) const { return {a * x.u + b * x.v, c * x.u + d * x.v}; }
    double det() const { return a * d - b * c; }
    Mat2 inverse() const {
        const double dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    static Mat2 identity() { return {}; }
};

// Affine chart change: old = origin + A * new.
struct AffineMap2 {
    Mat2 A;
    Vec2 origin;

    Vec2 apply(Vec2 w) const { return origin + A.apply(w); }
    Vec2 apply_inverse(Vec2 p) const { return A.inverse().apply(p - origin); }
};

struct Box2 {
    double u_min = -1.0, u_max = 1.0;
    double v_min = -1.0, v_max = 1.0;

    bool contains(Vec2 p) const {
        return p.u >= u_min && p.u <= u_max && p.v >= v_min && p.v <= v_max;
    }
    double width() const { return u_max - u_min; }
    double height() const { return v_max - v_min; }
    double diagonal() const { return std::hypot(width(), height()); }
    Vec2 center() const { return {0.5 * (u_min + u_max), 0.5 * (v_min + v_max)}; }
    bool empty() const { return !(u_min < u_max) || !(v_min < v_max); }
};

// Fixed 17-significant-digit, locale-independent float formatting for reports.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace crosscap
