#include "refrabill/jacobi.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "refrabill/errors.hpp"
#include "refrabill/quadrature.hpp"

namespace refrabill {

namespace {

constexpr double kQuadTol = 1.0e-11;
constexpr double kParallelTol = 1.0e-9; // rad

double real_dot(const std::complex<double>& u, const std::complex<double>& v) {
    return u.real() * v.real() + u.imag() * v.imag();
}

} // namespace

double inner_length_closed_form(const InnerArc& arc) {
    if (arc.Ttilde == 0.0) return 0.0;
    const double eT = std::exp(arc.Ttilde), emT = std::exp(-arc.Ttilde);
    const double sh = eT - emT, ch = eT + emT;
    const double S = std::norm(arc.w0) + std::norm(arc.w1);
    const double d = real_dot(arc.w0, arc.w1);
    const double E = arc.flow.E;
    return 2.0 * std::sqrt(E) *
           (0.5 * (ch / sh) * S - 2.0 * d / sh + arc.Ttilde * arc.Eprime);
}

JacobiValue s_outer(const BoundaryCurve& curve, const BilliardParams& params,
                    double xi1, double xi2) {
    const OuterArc arc = solve_outer_arc(curve, params, xi1, xi2);
    JacobiValue out;
    out.value = integrate_adaptive(
        [&](double s) { return std::sqrt(2.0) * v_outer(params, arc.position(s)); }, 0.0,
        arc.duration, kQuadTol);
    const Vec2 ta = curve.frame(xi1).tangent;
    const Vec2 tb = curve.frame(xi2).tangent;
    out.d_a = -std::sqrt(v_outer(params, arc.z0)) * arc.v0.normalized().dot(ta);
    out.d_b = std::sqrt(v_outer(params, arc.z1)) * arc.v1.normalized().dot(tb);
    return out;
}

JacobiValue s_inner(const BoundaryCurve& curve, const BilliardParams& params,
                    double xi1, double xi2) {
    const Vec2 p0 = curve.point(xi1);
    const Vec2 p1 = curve.point(xi2);
    const Vec2 ta = curve.frame(xi1).tangent;
    const Vec2 tb = curve.frame(xi2).tangent;
    const double E = params.inner_energy();

    JacobiValue out;
    if (std::abs(angle_between(p0, p1)) <= kParallelTol) {
        // collision-ejection segment: radial in, reflected at the origin, radial out
        out.value = radial_inner_length(E, params.mu, p0.norm()) +
                    radial_inner_length(E, params.mu, p1.norm());
        out.d_a = -std::sqrt(v_inner(params, p0)) * (-p0.normalized()).dot(ta);
        out.d_b = std::sqrt(v_inner(params, p1)) * p1.normalized().dot(tb);
        return out;
    }
    const InnerArc arc = solve_inner_arc(params, p0, p1, HomotopyClass::TnT);
    out.value = inner_length_closed_form(arc);
    out.d_a = -std::sqrt(v_inner(params, p0)) * arc.v0.normalized().dot(ta);
    out.d_b = std::sqrt(v_inner(params, p1)) * arc.v1.normalized().dot(tb);
    return out;
}

TotalLength total_length(const BoundaryCurve& curve, const BilliardParams& params,
                         const std::vector<double>& xi, ChainMode mode) {
    const int m = int(xi.size());
    if (mode == ChainMode::Periodic) {
        if (m < 2 || m % 2 != 0)
            throw PreconditionError("periodic chain needs an even parameter count >= 2");
    } else {
        if (m < 3 || m % 2 != 1)
            throw PreconditionError("fixed-ends chain needs an odd parameter count >= 3");
    }

    const int n_pairs = (mode == ChainMode::Periodic) ? m / 2 : (m - 1) / 2;
    std::vector<JacobiValue> outer(n_pairs), inner(n_pairs);
    TotalLength out;
    out.gradient.assign(m, 0.0);
    for (int j = 0; j < n_pairs; ++j) {
        try {
            outer[j] = s_outer(curve, params, xi[2 * j], xi[2 * j + 1]);
            inner[j] = s_inner(curve, params, xi[2 * j + 1], xi[(2 * j + 2) % m]);
        } catch (const ArcError& e) {
            throw ArcError(e.kind, std::string(e.what()) + " (chain pair " +
                                       std::to_string(j) + ")");
        }
        out.value += outer[j].value + inner[j].value;
    }

    for (int k = 0; k < m; ++k) {
        if (k % 2 == 1) { // outer arrives, inner departs
            const int j = k / 2;
            out.gradient[k] = outer[j].d_b + inner[j].d_a;
        } else if (mode == ChainMode::Periodic) {
            const int j = k / 2;
            const int jprev = (j + n_pairs - 1) % n_pairs;
            out.gradient[k] = inner[jprev].d_b + outer[j].d_a;
        } else if (k == 0) {
            out.gradient[k] = outer[0].d_a;
        } else if (k == m - 1) {
            out.gradient[k] = inner[n_pairs - 1].d_b;
        } else {
            const int j = k / 2;
            out.gradient[k] = inner[j - 1].d_b + outer[j].d_a;
        }
    }
    return out;
}

std::pair<double, double> outer_partials(const BoundaryCurve& curve,
                                         const BilliardParams& params, double xi1,
                                         double xi2) {
    const OuterArc arc = solve_outer_arc(curve, params, xi1, xi2);
    const Vec2 ta = curve.frame(xi1).tangent;
    const Vec2 tb = curve.frame(xi2).tangent;
    return {-std::sqrt(v_outer(params, arc.z0)) * arc.v0.normalized().dot(ta),
            std::sqrt(v_outer(params, arc.z1)) * arc.v1.normalized().dot(tb)};
}

std::pair<double, double> inner_partials(const BoundaryCurve& curve,
                                         const BilliardParams& params, double xi1,
                                         double xi2) {
    const Vec2 p0 = curve.point(xi1);
    const Vec2 p1 = curve.point(xi2);
    const Vec2 ta = curve.frame(xi1).tangent;
    const Vec2 tb = curve.frame(xi2).tangent;
    if (std::abs(angle_between(p0, p1)) <= kParallelTol) {
        return {-std::sqrt(v_inner(params, p0)) * (-p0.normalized()).dot(ta),
                std::sqrt(v_inner(params, p1)) * p1.normalized().dot(tb)};
    }
    const InnerArc arc = solve_inner_arc(params, p0, p1, HomotopyClass::TnT);
    return {-std::sqrt(v_inner(params, p0)) * arc.v0.normalized().dot(ta),
            std::sqrt(v_inner(params, p1)) * arc.v1.normalized().dot(tb)};
}

double snell_residual(const BoundaryCurve& curve, const BilliardParams& params,
                      const OuterArc& outer, const InnerArc& inner, double xi) {
    const Vec2 p = curve.point(xi);
    const Vec2 t = curve.frame(xi).tangent;
    const double tol = 1.0e-7 * std::max(1.0, curve.max_radius());
    // orientation by best endpoint match; near-homothetic clusters put every
    // endpoint within tolerance, so proximity alone cannot discriminate
    const double m_oi = (outer.z1 - p).norm() + (inner.p0 - p).norm();
    const double m_io = (inner.p1 - p).norm() + (outer.z0 - p).norm();
    if (std::min(m_oi, m_io) > 2.0 * tol)
        throw PreconditionError("snell_residual: arcs do not share the junction point");
    Vec2 vE, vI;
    if (m_oi <= m_io) {
        vE = outer.v1; // outer arrives, inner departs
        vI = inner.v0;
    } else {
        vE = outer.v0; // inner arrives, outer departs
        vI = inner.v1;
    }
    return std::sqrt(v_outer(params, p)) * vE.normalized().dot(t) -
           std::sqrt(v_inner(params, p)) * vI.normalized().dot(t);
}

} // namespace refrabill
