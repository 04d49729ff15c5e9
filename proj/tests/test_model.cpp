#include <cmath>
#include <numbers>

#include "doctest.h"
#include "refrabill/errors.hpp"
#include "refrabill/params.hpp"

using namespace refrabill;

TEST_CASE("outer potential values") {
    const BilliardParams p(1.0, 1.0, 2.0, 1.0);
    CHECK(v_outer(p, {0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(v_outer(p, {p.hill_radius(), 0.0})) < 1.0e-12);
    CHECK(v_outer(p, {1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("inner potential values") {
    const BilliardParams p(1.0, 2.0, 1.0, 3.0);
    CHECK(std::abs(v_inner(p, {1.0e9, 0.0}) - 4.0) < 1.0e-8 * 4.0);
    CHECK(v_inner(p, {1.0, 0.0}) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK_THROWS_AS(v_inner(p, {1.0e-15, 0.0}), ArcError);
}

TEST_CASE("inner dominates outer on the boundary") {
    const BilliardParams p(1.0, 1.0, 2.0, 0.5);
    const BoundaryCurve c = build_boundary(CurveSpec::ellipse(1.5, 1.0));
    for (double xi = 0.0; xi < c.total_length(); xi += 0.37) {
        const Vec2 z = c.point(xi);
        CHECK(v_inner(p, z) > v_outer(p, z));
        // the gap carries the harmonic term on top of h + mu/r
        const double gap = p.h + p.mu / z.norm() + 0.5 * p.omega2 * z.norm2();
        CHECK(v_inner(p, z) - v_outer(p, z) == doctest::Approx(gap).epsilon(1e-12));
        CHECK(v_inner(p, z) - v_outer(p, z) > p.h);
    }
}

TEST_CASE("critical angle reference values") {
    // engineered so V_E = 1 and V_I = 4 on the unit circle
    const BilliardParams p(2.0, 1.0, 2.0, 1.0);
    const BoundaryCurve circle = build_boundary(CurveSpec::ellipse(1.0, 1.0));
    CHECK(alpha_crit(p, circle, 0.3) ==
          doctest::Approx(std::numbers::pi / 6.0).epsilon(1e-12));

    // default-style parameters at |gamma| = 1
    const BilliardParams q(1.0, 1.0, 2.0, 10.0);
    CHECK(alpha_crit(q, circle, 0.0) ==
          doctest::Approx(std::asin(std::sqrt(1.5 / 13.0))).epsilon(1e-12));
}

TEST_CASE("critical angle decreases monotonically in h") {
    const BoundaryCurve circle = build_boundary(CurveSpec::ellipse(1.0, 1.0));
    double prev = std::numbers::pi;
    for (double h : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
        const BilliardParams p(1.0, 1.0, 2.0, h);
        const double a = alpha_crit(p, circle, 0.0);
        CHECK(a < prev);
        CHECK(a > 0.0);
        prev = a;
    }
}

TEST_CASE("pairing requires the curve inside the Hill disk") {
    const BilliardParams p(1.0, 1.0, 2.0, 1.0); // Hill radius 2
    check_pairing(p, build_boundary(CurveSpec::ellipse(1.5, 1.0)));
    CHECK_THROWS_AS(check_pairing(p, build_boundary(CurveSpec::ellipse(2.5, 1.0))),
                    SpecError);
}

TEST_CASE("parameters must be strictly positive") {
    CHECK_THROWS_AS(BilliardParams(0.0, 1.0, 1.0, 1.0), SpecError);
    CHECK_THROWS_AS(BilliardParams(1.0, -1.0, 1.0, 1.0), SpecError);
    CHECK_THROWS_AS(BilliardParams(1.0, 1.0, 1.0, 0.0), SpecError);
}
