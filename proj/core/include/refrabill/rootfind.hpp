#ifndef REFRABILL_ROOTFIND_HPP
#define REFRABILL_ROOTFIND_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace refrabill {

/// Bisection on a bracketing interval [a, b] with f(a) * f(b) <= 0.
/// Refines to |b - a| < xtol, then one secant polish step.
template <typename F>
double bisect(F&& f, double a, double b, double fa, double fb, double xtol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    for (int it = 0; it < 200 && (b - a) > xtol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m; fb = fm;
        } else {
            a = m; fa = fm;
        }
    }
    if (fb != fa) {
        const double s = a - fa * (b - a) / (fb - fa);
        if (s > a && s < b) return s;
    }
    return 0.5 * (a + b);
}

template <typename F>
double bisect(F&& f, double a, double b, double xtol) {
    return bisect(f, a, b, f(a), f(b), xtol);
}

/// Safeguarded Newton: falls back to bisection whenever the Newton step
/// leaves the bracket or stalls. Bracket must satisfy f(a) * f(b) <= 0.
template <typename F, typename DF>
double newton_bracketed(F&& f, DF&& df, double a, double b, double x0, double xtol) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double x = x0;
    for (int it = 0; it < 100; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fa < 0.0) != (fx < 0.0)) { b = x; fb = fx; } else { a = x; fa = fx; }
        const double d = df(x);
        double xn = (d != 0.0) ? x - fx / d : 0.5 * (a + b);
        if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
        if (std::abs(xn - x) < xtol) return xn;
        x = xn;
    }
    return x;
}

/// All sign-change roots of f on [a, b], located by a uniform scan of
/// n_scan panels followed by bisection. Exact zeros at scan nodes are kept.
template <typename F>
std::vector<double> scan_roots(F&& f, double a, double b, int n_scan, double xtol) {
    std::vector<double> roots;
    const double h = (b - a) / n_scan;
    double xl = a, fl = f(xl);
    for (int i = 1; i <= n_scan; ++i) {
        const double xr = (i == n_scan) ? b : a + i * h;
        const double fr = f(xr);
        if (fl == 0.0) {
            if (roots.empty() || std::abs(roots.back() - xl) > 2.0 * xtol) roots.push_back(xl);
        } else if ((fl < 0.0) != (fr < 0.0)) {
            const double r = bisect(f, xl, xr, fl, fr, xtol);
            if (roots.empty() || std::abs(roots.back() - r) > 2.0 * xtol) roots.push_back(r);
        }
        xl = xr; fl = fr;
    }
    if (fl == 0.0 && (roots.empty() || std::abs(roots.back() - xl) > 2.0 * xtol)) roots.push_back(xl);
    return roots;
}

} // namespace refrabill

#endif
