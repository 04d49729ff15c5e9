#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "refrabill/arcs.hpp"
#include "refrabill/errors.hpp"

using namespace refrabill;

namespace {

const BilliardParams kDefault(1.0, 1.0, 2.0, 100.0);

BoundaryCurve default_curve() { return build_boundary(CurveSpec::ellipse(1.5, 1.0)); }

} // namespace

TEST_CASE("homothetic outer arc: duration formula and ODE cross-check") {
    const BoundaryCurve curve = default_curve();
    const OuterArc arc = solve_outer_arc(curve, kDefault, 0.0, 0.0);
    const double r0 = 1.5;
    const double v0r = std::sqrt(2.0 * kDefault.calE - kDefault.omega2 * r0 * r0);
    CHECK(arc.homothetic);
    CHECK(arc.duration ==
          doctest::Approx(2.0 * std::atan2(v0r, r0) / kDefault.omega()).epsilon(1e-12));

    // independent integration of z'' = -omega^2 z from (z0, v0)
    auto accel = [&](const Vec2& z) { return z * (-kDefault.omega2); };
    const auto yT = oracles::integrate_second_order(accel, {arc.z0, arc.v0}, arc.duration);
    CHECK((yT.z - arc.z1).norm() < 1.0e-9);
    CHECK((yT.v - arc.v1).norm() < 1.0e-9);
}

TEST_CASE("outer arc on a circular domain, small separation") {
    const BoundaryCurve circle = build_boundary(CurveSpec::ellipse(1.0, 1.0));
    const BilliardParams p(1.0, 1.0, 2.0, 1.0);
    const double delta = 0.05;
    const OuterArc arc = solve_outer_arc(circle, p, 0.4, 0.4 + delta);
    CHECK((arc.position(0.0) - arc.z0).norm() < 1.0e-12);
    CHECK((arc.position(arc.duration) - arc.z1).norm() < 1.0e-9);
    double rmax = 0.0;
    for (int k = 1; k < 40; ++k)
        rmax = std::max(rmax, arc.position(arc.duration * k / 40.0).norm());
    CHECK(rmax > 1.0);

    const auto yT = oracles::integrate_second_order(
        [&](const Vec2& z) { return z * (-p.omega2); }, {arc.z0, arc.v0}, arc.duration);
    CHECK((yT.z - arc.z1).norm() < 1.0e-9);
}

TEST_CASE("outer arcs conserve the zero-energy relation exactly") {
    const BoundaryCurve curve = default_curve();
    const OuterArc arc = solve_outer_arc(curve, kDefault, 0.1, 0.6);
    for (int k = 0; k <= 20; ++k) {
        const double s = arc.duration * k / 20.0;
        const double e = 0.5 * arc.velocity(s).norm2() +
                         0.5 * kDefault.omega2 * arc.position(s).norm2() - kDefault.calE;
        CHECK(std::abs(e) < 1.0e-10);
    }
}

TEST_CASE("exactly one exterior duration root on small windows") {
    const BoundaryCurve curve = default_curve();
    auto rng = oracles::rng(17);
    const double L = curve.total_length();
    std::uniform_real_distribution<double> width(-0.05 * L, 0.05 * L);
    for (int trial = 0; trial < 30; ++trial) {
        const double base = 0.25 * (trial % 4) * L; // around each vertex
        const double xi1 = base + width(rng), xi2 = base + width(rng);
        const Vec2 z0 = curve.point(xi1), z1 = curve.point(xi2);
        if ((z0 - z1).norm() < 1.0e-6) continue;

        // enumerate all exterior roots independently of the solver
        const double c1 = kDefault.omega2 * (z0.norm2() + z1.norm2());
        const double c2 = 2.0 * kDefault.omega2 * z0.dot(z1);
        const double c3 = 2.0 * kDefault.calE;
        int exterior = 0;
        const double disc = c2 * c2 - 4.0 * c3 * (c1 - c3);
        REQUIRE(disc >= 0.0);
        for (double sgn : {1.0, -1.0}) {
            const double x = (c2 + sgn * std::sqrt(disc)) / (2.0 * c3);
            if (!(x > -1.0 && x < 1.0)) continue;
            for (double u : {std::acos(x), 2.0 * std::numbers::pi - std::acos(x)}) {
                if (std::abs(std::sin(u)) < 1.0e-9) continue;
                const Vec2 v0 = (z1 - z0 * std::cos(u)) * (kDefault.omega() / std::sin(u));
                const HarmonicFlow flow{z0, v0, kDefault.omega()};
                bool outside = true;
                for (int k = 1; k < 200; ++k) {
                    const double s = (u / kDefault.omega()) * k / 200.0;
                    if (curve.radial_gap(flow.position(s)) < -1.0e-9) outside = false;
                }
                if (outside) ++exterior;
            }
        }
        CHECK(exterior == 1);
        // and the solver returns it
        const OuterArc arc = solve_outer_arc(curve, kDefault, xi1, xi2);
        CHECK((arc.position(arc.duration) - z1).norm() < 1.0e-9);
    }
}

TEST_CASE("outer flow propagation against the ODE oracle") {
    const BilliardParams p(1.0, 1.0, 2.0, 1.0);
    // stationary turning point at the Hill boundary retraces radially
    const Vec2 zh{p.hill_radius(), 0.0};
    const HarmonicFlow turning = propagate_outer(p, zh, {0.0, 0.0});
    CHECK((turning.position(0.3) - zh * std::cos(0.3)).norm() < 1.0e-12);

    // full period closes
    const Vec2 z0{1.2, 0.4};
    const double speed = std::sqrt(2.0 * v_outer(p, z0));
    const Vec2 v0 = Vec2{-0.3, 1.0}.normalized() * speed;
    const HarmonicFlow flow = propagate_outer(p, z0, v0);
    const double T = 2.0 * std::numbers::pi / p.omega();
    CHECK((flow.position(T) - z0).norm() < 1.0e-12);
    CHECK((flow.velocity(T) - v0).norm() < 1.0e-12);

    // random states against the integrator over one period
    auto rng = oracles::rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        Vec2 z{1.2 + 0.3 * u(rng), 0.5 * u(rng)};
        const double sp = std::sqrt(2.0 * v_outer(p, z));
        Vec2 v = Vec2{u(rng), u(rng)}.normalized() * sp;
        const HarmonicFlow f = propagate_outer(p, z, v);
        const auto yT = oracles::integrate_second_order(
            [&](const Vec2& q) { return q * (-p.omega2); }, {z, v}, T, 1.0e-13);
        CHECK((f.position(T) - yT.z).norm() < 1.0e-10);
        CHECK((f.velocity(T) - yT.v).norm() < 1.0e-10);
    }

    CHECK_THROWS_AS(propagate_outer(p, z0, v0 * 1.1), ArcError);
}

TEST_CASE("collision-ejection inner arc and its radial Jacobi length") {
    const BilliardParams p(1.0, 2.0, 0.5, 0.5); // inner energy 1, mu 2
    const Vec2 q{1.0, 0.0};
    const InnerArc arc = solve_inner_arc(p, q, q);
    CHECK(arc.collision);
    // the LC coefficients are anti-parallel multiples of w0
    const double crossAB = arc.flow.A.real() * arc.flow.B.imag() -
                           arc.flow.A.imag() * arc.flow.B.real();
    CHECK(std::abs(crossAB) < 1.0e-12);

    // radial closed form against quadrature (u = sqrt(r) removes the kink)
    const double E = p.inner_energy();
    const double by_quad = oracles::romberg(
        [&](double u) { return 2.0 * std::sqrt(E * u * u + p.mu); }, 0.0, 1.0);
    CHECK(radial_inner_length(E, p.mu, 1.0) == doctest::Approx(by_quad).epsilon(1e-11));
}

TEST_CASE("TnT arc reference case: endpoints, energy, winding") {
    const BilliardParams p(1.0, 2.0, 0.5, 0.5); // inner energy 1, mu 2
    const Vec2 p0{1.0, 0.0}, p1{0.0, 1.0};
    const InnerArc arc = solve_inner_arc(p, p0, p1, HomotopyClass::TnT);
    CHECK((arc.position(0.0) - p0).norm() < 1.0e-10);
    CHECK((arc.position(arc.duration) - p1).norm() < 1.0e-10);
    CHECK_FALSE(arc.collision);
    CHECK(real(arc.w0) * real(arc.w1) + imag(arc.w0) * imag(arc.w1) < 0.0);

    double emax = 0.0;
    std::vector<Vec2> path;
    for (int k = 0; k <= 200; ++k) {
        const double tau = arc.Ttilde * k / 200.0;
        const Vec2 z = arc.position_tau(tau);
        path.push_back(z);
        const Vec2 v = arc.flow.velocity_tau(tau);
        emax = std::max(emax,
                        std::abs(0.5 * v.norm2() - p.inner_energy() - p.mu / z.norm()));
    }
    CHECK(emax < 1.0e-9);

    // TnT: arc plus reversed chord winds an odd number of times; the Direct
    // arc closes up to winding zero
    CHECK(std::abs(std::abs(oracles::winding_number(path)) - 1.0) < 0.2);
    const InnerArc direct = solve_inner_arc(p, p0, p1, HomotopyClass::Direct);
    std::vector<Vec2> dpath;
    for (int k = 0; k <= 200; ++k)
        dpath.push_back(direct.position_tau(direct.Ttilde * k / 200.0));
    CHECK(std::abs(oracles::winding_number(dpath)) < 0.2);

    // the TnT arc circles the origin opposite to the chord's sense
    const double chord_sense = p0.cross(p1 - p0); // CCW chord
    const double arc_sense = path[0].cross(path[1] - path[0]);
    CHECK(chord_sense * arc_sense < 0.0);
}

TEST_CASE("inner arc re-propagated by the Kepler ODE oracle") {
    const BilliardParams p(1.0, 1.0, 2.0, 50.0);
    const BoundaryCurve curve = default_curve();
    auto rng = oracles::rng(31);
    std::uniform_real_distribution<double> u(0.0, curve.total_length());
    int done = 0;
    while (done < 15) {
        const Vec2 p0 = curve.point(u(rng)), p1 = curve.point(u(rng));
        const double sep = std::abs(angle_between(p0, p1));
        if (sep < 0.2 || sep > std::numbers::pi - 0.2) continue;
        ++done;
        const InnerArc arc = solve_inner_arc(p, p0, p1);
        auto accel = [&](const Vec2& z) {
            const double r = z.norm();
            return z * (-p.mu / (r * r * r));
        };
        const auto yT =
            oracles::integrate_second_order(accel, {arc.p0, arc.v0}, arc.duration, 1.0e-13);
        CHECK((yT.z - p1).norm() < 1.0e-8 * std::max(1.0, p1.norm()));
    }
}

TEST_CASE("large h drives the TnT arc to the broken line through the origin") {
    const BoundaryCurve curve = default_curve();
    const Vec2 p0 = curve.point(0.2);
    const Vec2 p1 = curve.point(2.3);
    double prev = 1.0e300;
    for (double h : {100.0, 1000.0, 10000.0}) {
        const BilliardParams p(1.0, 1.0, 2.0, h);
        const InnerArc arc = solve_inner_arc(p, p0, p1);
        double dmax = 0.0;
        for (int k = 0; k <= 400; ++k) {
            const Vec2 z = arc.position_tau(arc.Ttilde * k / 400.0);
            const double d = std::min(oracles::dist_to_segment(z, p0, {0.0, 0.0}),
                                      oracles::dist_to_segment(z, {0.0, 0.0}, p1));
            dmax = std::max(dmax, d);
        }
        CHECK(dmax < prev);
        prev = dmax;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("regularized radial infall reflects through the collision") {
    const BilliardParams p(1.0, 1.0, 2.0, 10.0);
    const Vec2 z0{0.9, 0.0};
    const double speed = std::sqrt(2.0 * (p.inner_energy() + p.mu / z0.norm()));
    const KeplerFlow flow = propagate_inner(p, z0, {-speed, 0.0});
    // collision instant: w crosses zero
    const double tau_c = 0.25 * std::log(std::norm(flow.B) / std::norm(flow.A));
    const double s_c = flow.time_of_tau(tau_c);
    REQUIRE(s_c > 0.0);
    for (double ds : {0.01, 0.05, 0.1}) {
        const Vec2 before = flow.position(s_c - ds);
        const Vec2 after = flow.position(s_c + ds);
        CHECK((before - after).norm() < 1.0e-9); // retraces the same ray
        CHECK((flow.velocity(s_c - ds) + flow.velocity(s_c + ds)).norm() < 1.0e-8);
    }
}

TEST_CASE("inner flow conserves the Kepler invariants") {
    const BilliardParams p(1.0, 1.3, 2.0, 25.0);
    const Vec2 z0{0.8, 0.3};
    const double speed = std::sqrt(2.0 * (p.inner_energy() + p.mu / z0.norm()));
    const Vec2 v0 = Vec2{-0.7, 0.9}.normalized() * speed;
    const KeplerFlow flow = propagate_inner(p, z0, v0);

    auto lrl = [&](const Vec2& z, const Vec2& v) {
        const double ell = z.cross(v);
        return v.rot_cw() * ell - z.normalized() * p.mu;
    };
    const double ell0 = z0.cross(v0);
    const Vec2 lrl0 = lrl(z0, v0);
    for (int k = 1; k <= 40; ++k) {
        const double tau = 0.05 * k;
        const Vec2 z = flow.position_tau(tau);
        const Vec2 v = flow.velocity_tau(tau);
        CHECK(std::abs(0.5 * v.norm2() - p.mu / z.norm() - p.inner_energy()) < 1.0e-9);
        CHECK(std::abs(z.cross(v) - ell0) < 1.0e-9);
        CHECK((lrl(z, v) - lrl0).norm() < 1.0e-9);
    }
}

TEST_CASE("initial-value inner flow reproduces the two-point solution") {
    const BilliardParams p(1.0, 1.0, 2.0, 40.0);
    const BoundaryCurve curve = default_curve();
    const Vec2 p0 = curve.point(0.15), p1 = curve.point(2.1);
    const InnerArc arc = solve_inner_arc(p, p0, p1);
    const KeplerFlow flow = propagate_inner(p, p0, arc.v0);
    CHECK((flow.position(arc.duration) - p1).norm() < 1.0e-8);
}

TEST_CASE("boundary-value/initial-value round trips on random pairs") {
    const BoundaryCurve curve = default_curve();
    const BilliardParams p(1.0, 1.0, 2.0, 20.0);
    auto rng = oracles::rng(41);
    const double L = curve.total_length();
    std::uniform_real_distribution<double> u(0.0, L);

    int outer_done = 0;
    while (outer_done < 500) {
        const double base = u(rng);
        std::uniform_real_distribution<double> off(-0.04 * L, 0.04 * L);
        const double xi1 = base, xi2 = base + off(rng);
        OuterArc arc;
        try {
            arc = solve_outer_arc(curve, p, xi1, xi2);
        } catch (const ArcError&) {
            continue;
        }
        ++outer_done;
        const HarmonicFlow flow = propagate_outer(p, arc.z0, arc.v0);
        CHECK((flow.position(arc.duration) - arc.z1).norm() < 1.0e-8);
    }

    int inner_done = 0;
    while (inner_done < 500) {
        const Vec2 p0 = curve.point(u(rng)), p1 = curve.point(u(rng));
        InnerArc arc;
        try {
            arc = solve_inner_arc(p, p0, p1);
        } catch (const ArcError&) {
            continue;
        }
        if (arc.collision) continue;
        ++inner_done;
        const KeplerFlow flow = propagate_inner(p, p0, arc.v0);
        CHECK((flow.position(arc.duration) - p1).norm() < 1.0e-8);
    }
}

TEST_CASE("inner arc reversal is the time-reverse") {
    const BoundaryCurve curve = default_curve();
    const BilliardParams p(1.0, 1.0, 2.0, 30.0);
    const Vec2 p0 = curve.point(0.3), p1 = curve.point(2.0);
    const InnerArc fwd = solve_inner_arc(p, p0, p1);
    const InnerArc bwd = solve_inner_arc(p, p1, p0);
    CHECK(std::abs(fwd.duration - bwd.duration) < 1.0e-9);
    CHECK((fwd.v0 + bwd.v1).norm() < 1.0e-9);
    CHECK((fwd.v1 + bwd.v0).norm() < 1.0e-9);
}

TEST_CASE("inner solver refuses bad endpoints") {
    const BilliardParams p(1.0, 1.0, 2.0, 10.0);
    CHECK_THROWS_AS(solve_inner_arc(p, {1.0, 0.0}, {-0.5, 0.0}), ArcError);
    CHECK_THROWS_AS(solve_inner_arc(p, {0.0, 0.0}, {1.0, 0.0}), ArcError);
    try {
        solve_inner_arc(p, {1.0, 0.0}, {-2.0, 0.0});
        FAIL("antipodal endpoints accepted");
    } catch (const ArcError& e) {
        CHECK(e.kind == ArcError::Kind::AntipodalEndpoints);
    }
}
