#include "refrabill/arcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "refrabill/errors.hpp"
#include "refrabill/rootfind.hpp"

namespace refrabill {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAntipodalTol = 1.0e-9;

double real_dot(const std::complex<double>& u, const std::complex<double>& v) {
    return u.real() * v.real() + u.imag() * v.imag();
}

// Exteriority of an outer candidate: the boundary gap must stay positive on
// (0, T). Chebyshev nodes cluster near the endpoints where the gap vanishes
// by construction; sample count doubles while the interior margin looks thin.
enum class ExteriorStatus { Exterior, Tangent, Enters };

ExteriorStatus classify_exterior(const BoundaryCurve& curve, const HarmonicFlow& flow,
                                 double T) {
    const double scale = curve.max_radius();
    int n = 64;
    for (;;) {
        double min_gap = std::numeric_limits<double>::infinity();
        double min_interior = min_gap;
        for (int k = 1; k < n; ++k) {
            const double frac = 0.5 * (1.0 - std::cos(std::numbers::pi * k / n));
            const double g = curve.radial_gap(flow.position(frac * T));
            if (g < -1.0e-6 * scale) return ExteriorStatus::Enters; // clearly inside
            min_gap = std::min(min_gap, g);
            if (frac > 0.05 && frac < 0.95) min_interior = std::min(min_interior, g);
        }
        if (min_gap < -1.0e-9 * scale) return ExteriorStatus::Enters;
        if (min_interior < 1.0e-10 * scale) return ExteriorStatus::Tangent;
        if (min_interior < 1.0e-4 * scale && n < 1024) {
            n *= 2;
            continue;
        }
        return ExteriorStatus::Exterior;
    }
}

} // namespace

double KeplerFlow::time_of_tau(double tau) const {
    const double a2 = std::norm(A), b2 = std::norm(B);
    const double ab = real_dot(A, B);
    const double t = 0.5 * a2 * (std::exp(2.0 * tau) - 1.0) +
                     0.5 * b2 * (1.0 - std::exp(-2.0 * tau)) + 2.0 * ab * tau;
    return std::sqrt(2.0) * t / std::sqrt(E);
}

double KeplerFlow::tau_of_time(double s) const {
    if (s == 0.0) return 0.0;
    auto f = [&](double tau) { return time_of_tau(tau) - s; };
    auto df = [&](double tau) { return std::sqrt(2.0 / E) * std::norm(w(tau)); };
    // bracket: |w|^2 grows exponentially, so time does too
    double lo = 0.0, hi = (s > 0.0) ? 1.0 : -1.0;
    if (s > 0.0) {
        while (f(hi) < 0.0) hi *= 2.0;
    } else {
        while (f(hi) > 0.0) hi *= 2.0;
        std::swap(lo, hi);
    }
    return newton_bracketed(f, df, lo, hi, 0.5 * (lo + hi), 1.0e-14 * std::max(1.0, std::abs(hi)));
}

double InnerArc::min_lc_radius() const {
    const double a = std::abs(flow.A), b = std::abs(flow.B);
    if (a == 0.0 || b == 0.0) return std::min(std::abs(w0), std::abs(w1));
    const double tau_star = 0.25 * std::log((b * b) / (a * a));
    if (tau_star <= 0.0 || tau_star >= Ttilde)
        return std::min(std::abs(w0), std::abs(w1));
    return std::abs(flow.w(tau_star));
}

OuterArc solve_outer_arc(const BoundaryCurve& curve, const BilliardParams& params,
                         double xi1, double xi2) {
    const double omega = params.omega();
    const Vec2 z0 = curve.point(xi1);
    const Vec2 z1 = curve.point(xi2);
    const double v0sq = 2.0 * params.calE - params.omega2 * z0.norm2();
    if (v0sq <= 0.0)
        throw ArcError(ArcError::Kind::EnergyMismatch, "outer endpoint outside the Hill disk");

    const double L = curve.total_length();
    double sep = std::abs(curve.wrap(xi2) - curve.wrap(xi1));
    sep = std::min(sep, L - sep);

    if (sep < 1.0e-12 * L) {
        // homothetic out-and-back segment along the radial direction
        OuterArc arc;
        arc.z0 = z0;
        arc.z1 = z0;
        const double r0 = z0.norm();
        const double v0r = std::sqrt(v0sq);
        arc.v0 = z0.normalized() * v0r;
        arc.duration = 2.0 * std::atan2(v0r, omega * r0) / omega;
        arc.flow = {z0, arc.v0, omega};
        arc.v1 = arc.flow.velocity(arc.duration);
        arc.homothetic = true;
        if (classify_exterior(curve, arc.flow, arc.duration) == ExteriorStatus::Enters)
            throw ArcError(ArcError::Kind::NoExteriorRoot,
                           "homothetic outer segment re-enters the domain");
        return arc;
    }

    // duration equation in u = omega T:
    //   omega^2 (|z0|^2 + |z1|^2) - 2 omega^2 (z0 . z1) cos u - 2 calE sin^2 u = 0
    // which is a quadratic in x = cos u
    const double c1 = params.omega2 * (z0.norm2() + z1.norm2());
    const double c2 = 2.0 * params.omega2 * z0.dot(z1);
    const double c3 = 2.0 * params.calE;
    std::vector<double> roots;
    const double disc = c2 * c2 - 4.0 * c3 * (c1 - c3);
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        for (double x : {(c2 + sq) / (2.0 * c3), (c2 - sq) / (2.0 * c3)}) {
            if (!(x > -1.0 + 1.0e-15 && x < 1.0 - 1.0e-15)) continue;
            const double u = std::acos(x);
            roots.push_back(u);
            roots.push_back(kTwoPi - u);
        }
    }

    // Root selection: concave boundary stretches admit a second exterior
    // solution (a near-chord arc) whose duration collapses to zero at
    // coincident endpoints. The realization machinery needs the branch that
    // continues the homothetic bounce, so among exterior candidates we keep
    // the duration closest to the homothetic one at the window midpoint.
    double mid = curve.wrap(xi1) + 0.5 * (curve.wrap(xi2) - curve.wrap(xi1));
    if (std::abs(curve.wrap(xi2) - curve.wrap(xi1)) > 0.5 * L)
        mid += 0.5 * L; // the pair straddles the wrap point
    const double r_mid = curve.radius(mid);
    const double v_mid = std::sqrt(std::max(0.0, 2.0 * params.calE - params.omega2 * r_mid * r_mid));
    const double t_hom = 2.0 * std::atan2(v_mid, omega * r_mid) / omega;

    bool saw_tangent = false;
    bool found = false;
    OuterArc best;
    for (double u : roots) {
        const double s = std::sin(u);
        if (std::abs(s) < 1.0e-9) continue;
        OuterArc cand;
        cand.z0 = z0;
        cand.z1 = z1;
        cand.duration = u / omega;
        cand.v0 = (z1 - z0 * std::cos(u)) * (omega / s);
        cand.flow = {z0, cand.v0, omega};
        cand.v1 = cand.flow.velocity(cand.duration);
        const ExteriorStatus st = classify_exterior(curve, cand.flow, cand.duration);
        if (st == ExteriorStatus::Tangent) saw_tangent = true;
        if (st != ExteriorStatus::Exterior) continue;
        if (!found || std::abs(cand.duration - t_hom) < std::abs(best.duration - t_hom)) {
            best = cand;
            found = true;
        }
    }
    if (found) return best;
    if (saw_tangent)
        throw ArcError(ArcError::Kind::Tangency, "outer arc grazes the boundary");
    throw ArcError(ArcError::Kind::NoExteriorRoot,
                   "no exterior outer arc between the given parameters");
}

InnerArc solve_inner_arc(const BilliardParams& params, const Vec2& p0, const Vec2& p1,
                         HomotopyClass cls) {
    if (p0.norm() < 1.0e-14 || p1.norm() < 1.0e-14)
        throw ArcError(ArcError::Kind::ZeroEndpoint, "inner arc endpoint at the origin");
    if (std::abs(angle_between(p0, -p1)) <= kAntipodalTol)
        throw ArcError(ArcError::Kind::AntipodalEndpoints,
                       "inner arc endpoints are antipodally directed");

    const double E = params.inner_energy();
    const double Ep = params.mu / (2.0 * E);

    InnerArc arc;
    arc.p0 = p0;
    arc.p1 = p1;
    arc.homotopy = cls;
    arc.Eprime = Ep;
    arc.w0 = std::sqrt(p0.as_complex());
    std::complex<double> w1 = std::sqrt(p1.as_complex());
    const double d_raw = real_dot(arc.w0, w1);
    if (cls == HomotopyClass::TnT) {
        if (d_raw > 0.0) w1 = -w1; // ties (perpendicular LC vectors) stay TnT
    } else {
        if (d_raw < 0.0) w1 = -w1;
    }
    arc.w1 = w1;

    const double d = real_dot(arc.w0, arc.w1);
    const double S = std::norm(arc.w0) + std::norm(arc.w1);
    const double q = d / (2.0 * Ep);
    const double y = -q + std::sqrt(S / (2.0 * Ep) + q * q + 1.0);
    arc.Ttilde = std::acosh(std::max(1.0, y));

    const double eT = std::exp(arc.Ttilde), emT = std::exp(-arc.Ttilde);
    const double denom = eT - emT;
    if (denom < 1.0e-300) {
        // coincident endpoints in the Direct class: the empty segment
        arc.flow = {arc.w0, {0.0, 0.0}, E, params.mu};
        arc.v0 = arc.v1 = Vec2{};
        arc.duration = 0.0;
        return arc;
    }
    const std::complex<double> A = (arc.w1 - arc.w0 * emT) / denom;
    const std::complex<double> B = (arc.w0 * eT - arc.w1) / denom;
    arc.flow = {A, B, E, params.mu};

    // repulsor energy identity fixes the branch algebra
    const double Ep_check = -2.0 * real_dot(A, B);
    if (std::abs(Ep_check - Ep) > 1.0e-9 * std::max(1.0, Ep))
        throw ArcError(ArcError::Kind::EnergyMismatch,
                       "Levi-Civita energy identity violated");

    const double wscale = std::max(std::abs(arc.w0), std::abs(arc.w1));
    arc.collision = arc.min_lc_radius() < 1.0e-12 * wscale;

    arc.duration = arc.flow.time_of_tau(arc.Ttilde);
    arc.v0 = arc.flow.velocity_tau(0.0);
    arc.v1 = arc.flow.velocity_tau(arc.Ttilde);

    const Vec2 p1_check = arc.flow.position_tau(arc.Ttilde);
    if ((p1_check - p1).norm() > 1.0e-9 * std::max(1.0, p1.norm()))
        throw ArcError(ArcError::Kind::EnergyMismatch,
                       "Levi-Civita endpoint reconstruction failed");
    return arc;
}

HarmonicFlow propagate_outer(const BilliardParams& params, const Vec2& z0, const Vec2& v0) {
    const double resid = 0.5 * v0.norm2() - v_outer(params, z0);
    if (std::abs(resid) > 1.0e-9 * std::max(1.0, params.calE))
        throw ArcError(ArcError::Kind::EnergyMismatch, "outer flow off the energy shell");
    return {z0, v0, params.omega()};
}

KeplerFlow propagate_inner(const BilliardParams& params, const Vec2& z0, const Vec2& v0) {
    const double E = params.inner_energy();
    const double resid = 0.5 * v0.norm2() - E - params.mu / z0.norm();
    if (std::abs(resid) > 1.0e-9 * std::max(1.0, E))
        throw ArcError(ArcError::Kind::EnergyMismatch, "inner flow off the energy shell");
    if (z0.norm() < 1.0e-14)
        throw ArcError(ArcError::Kind::ZeroEndpoint, "inner flow started at the origin");
    const std::complex<double> w0 = std::sqrt(z0.as_complex());
    const std::complex<double> wp0 =
        std::conj(w0) * v0.as_complex() / (std::sqrt(2.0) * std::sqrt(E));
    return {0.5 * (w0 + wp0), 0.5 * (w0 - wp0), E, params.mu};
}

double radial_inner_length(double E, double mu, double r) {
    // antiderivative of sqrt(E + mu/r), evaluated from 0 to r
    const double root = std::sqrt(E * r * r + mu * r);
    const double sE = std::sqrt(E);
    return root + 0.5 * mu / sE *
                      (std::log(2.0 * sE * root + 2.0 * E * r + mu) - std::log(mu));
}

} // namespace refrabill
