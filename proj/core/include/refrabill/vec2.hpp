#ifndef REFRABILL_VEC2_HPP
#define REFRABILL_VEC2_HPP

#include <cmath>
#include <complex>

namespace refrabill {

/// Plane vector with the handful of operations the solvers need.
/// Levi-Civita code views the same data as a complex number.
struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double xx, double yy) : x(xx), y(yy) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    constexpr double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
    double angle() const { return std::atan2(y, x); }

    Vec2 normalized() const {
        const double n = norm();
        return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
    }

    /// Rotation by -pi/2; maps a unit tangent of a CCW curve to the outward normal.
    constexpr Vec2 rot_cw() const { return {y, -x}; }

    std::complex<double> as_complex() const { return {x, y}; }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

inline Vec2 from_complex(const std::complex<double>& z) { return {z.real(), z.imag()}; }

inline double dot(const Vec2& a, const Vec2& b) { return a.dot(b); }
inline double cross(const Vec2& a, const Vec2& b) { return a.cross(b); }

/// Signed angle from a to b in (-pi, pi].
inline double angle_between(const Vec2& a, const Vec2& b) {
    return std::atan2(a.cross(b), a.dot(b));
}

} // namespace refrabill

#endif
