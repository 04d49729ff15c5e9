#ifndef REFRABILL_TESTS_ORACLES_HPP
#define REFRABILL_TESTS_ORACLES_HPP

// Independent numerical oracles for the test suite. Everything here is
// deliberately decoupled from the library's solvers: a Dormand-Prince 5(4)
// integrator for second-order plane ODEs, Romberg quadrature, and small
// geometry helpers.

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "refrabill/vec2.hpp"

namespace oracles {

using refrabill::Vec2;

struct State4 {
    Vec2 z, v;
};

/// Adaptive Dormand-Prince 5(4) for z'' = accel(z), from s = 0 to s_end.
/// Optionally records (s, state) after every accepted step.
inline State4 integrate_second_order(const std::function<Vec2(const Vec2&)>& accel,
                                     State4 y0, double s_end, double tol = 1.0e-12,
                                     std::vector<std::pair<double, State4>>* track = nullptr) {
    static const double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
    static const double b5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                                 -2187.0 / 6784, 11.0 / 84, 0.0};
    static const double b4[7] = {5179.0 / 57600,  0.0,    7571.0 / 16695, 393.0 / 640,
                                 -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    auto deriv = [&](const State4& y) { return State4{y.v, accel(y.z)}; };
    auto axpy = [](State4 y, double f, const State4& d) {
        y.z += f * d.z;
        y.v += f * d.v;
        return y;
    };

    double s = 0.0;
    double hstep = (s_end > 0.0 ? 1.0 : -1.0) * std::min(1.0e-3, std::abs(s_end));
    State4 y = y0;
    if (track) track->push_back({0.0, y});
    const double dir = s_end >= 0.0 ? 1.0 : -1.0;
    int guard = 0;
    while (dir * (s_end - s) > 1.0e-16 * std::abs(s_end) && ++guard < 2000000) {
        if (dir * (s + hstep - s_end) > 0.0) hstep = s_end - s;
        State4 k[7];
        k[0] = deriv(y);
        for (int i = 1; i < 7; ++i) {
            State4 yi = y;
            for (int j = 0; j < i; ++j) yi = axpy(yi, hstep * a[i][j], k[j]);
            k[i] = deriv(yi);
        }
        State4 y5 = y, y4 = y;
        for (int i = 0; i < 7; ++i) {
            y5 = axpy(y5, hstep * b5[i], k[i]);
            y4 = axpy(y4, hstep * b4[i], k[i]);
        }
        const double err = std::sqrt((y5.z - y4.z).norm2() + (y5.v - y4.v).norm2());
        const double scale =
            tol * (1.0 + std::sqrt(y.z.norm2() + y.v.norm2()));
        if (err <= scale) {
            s += hstep;
            y = y5;
            if (track) track->push_back({s, y});
        }
        const double fac = (err > 0.0) ? 0.9 * std::pow(scale / err, 0.2) : 2.0;
        hstep *= std::clamp(fac, 0.2, 5.0);
    }
    return y;
}

/// Romberg integration by trapezoid refinement with Richardson extrapolation.
inline double romberg(const std::function<double(double)>& f, double a, double b,
                      double tol = 1.0e-12) {
    constexpr int kMax = 22;
    std::array<double, kMax> row{}, prev{};
    double h = b - a;
    prev[0] = 0.5 * h * (f(a) + f(b));
    long n = 1;
    for (int k = 1; k < kMax; ++k) {
        h *= 0.5;
        double sum = 0.0;
        for (long i = 0; i < n; ++i) sum += f(a + (2 * i + 1) * h);
        row[0] = 0.5 * prev[0] + h * sum;
        double p4 = 4.0;
        for (int j = 1; j <= k; ++j) {
            row[j] = (p4 * row[j - 1] - prev[j - 1]) / (p4 - 1.0);
            p4 *= 4.0;
        }
        if (k > 3 && std::abs(row[k] - prev[k - 1]) < tol) return row[k];
        prev = row;
        n *= 2;
    }
    return prev[kMax - 1];
}

/// Winding number of a closed polyline about the origin.
inline double winding_number(const std::vector<Vec2>& pts) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += refrabill::angle_between(pts[i], pts[i + 1]);
    total += refrabill::angle_between(pts.back(), pts.front());
    return total / (2.0 * M_PI);
}

/// Distance from a point to the segment [a, b].
inline double dist_to_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double t = std::clamp((p - a).dot(ab) / ab.norm2(), 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

inline std::mt19937_64 rng(unsigned seed) { return std::mt19937_64(seed); }

} // namespace oracles

#endif
