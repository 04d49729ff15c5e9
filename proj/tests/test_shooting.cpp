#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "refrabill/errors.hpp"
#include "refrabill/shooting.hpp"

using namespace refrabill;

namespace {

struct Setup {
    BoundaryCurve curve = build_boundary(CurveSpec::ellipse(1.5, 1.0));
    BilliardParams params{1.0, 1.0, 2.0, 100.0};
    IntervalSystem system;
    Setup() {
        system = build_interval_system(curve, find_central_configurations(curve),
                                       0.05 * curve.total_length());
    }
};

const Setup& setup() {
    static Setup s;
    return s;
}

} // namespace

TEST_CASE("miranda certificate for a two-letter word") {
    const auto& S = setup();
    const Word w{{0, 1}, Word::Kind::Periodic};
    const MirandaReport mr = miranda_check(S.curve, S.params, S.system, w,
                                           ChainMode::Periodic);
    CHECK(mr.pass());
    REQUIRE(mr.faces.size() == 4);
    for (const auto& f : mr.faces) CHECK(f.opposite_uniform);

    // below the threshold the certificate degrades to inconclusive or fail
    const BilliardParams low(1.0, 1.0, 2.0, 0.01);
    const MirandaReport mlow = miranda_check(S.curve, low, S.system, w,
                                             ChainMode::Periodic);
    CHECK_FALSE(mlow.pass());
}

TEST_CASE("one-dimensional miranda is the intermediate value theorem") {
    const auto& S = setup();
    const Word w{{0, 1}, Word::Kind::Finite};
    const double xa = S.system.intervals[0].center();
    const double xb = S.system.intervals[1].center();
    const MirandaReport mr = miranda_check(S.curve, S.params, S.system, w,
                                           ChainMode::FixedEnds, xa, xb);
    REQUIRE(mr.faces.size() == 1);
    CHECK(mr.pass());

    // the certified sign change brackets the same root plain bisection finds
    const Interval& box = S.system.intervals[0];
    auto f = [&](double x) {
        return outer_partials(S.curve, S.params, xa, x).second +
               inner_partials(S.curve, S.params, x, xb).first;
    };
    REQUIRE(f(box.alpha) * f(box.beta) < 0.0);
    double lo = box.alpha, hi = box.beta;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(lo) * f(mid) <= 0.0) hi = mid;
        else lo = mid;
    }
    const RealizeResult rr = realize_fixed_ends(S.curve, S.params, S.system, w, xa, xb);
    REQUIRE(rr.ok());
    CHECK(std::abs(rr.chain.xi[1] - 0.5 * (lo + hi)) < 1.0e-8);
}

TEST_CASE("length-1 word realizes the homothetic collision orbit") {
    const auto& S = setup();
    const Word w{{0}, Word::Kind::Periodic};
    const RealizeResult rr = realize_periodic(S.curve, S.params, S.system, w);
    REQUIRE(rr.ok());
    CHECK(std::abs(rr.chain.xi[0] - S.system.intervals[0].xi_bar) < 1.0e-9);
    CHECK(std::abs(rr.chain.xi[1] - S.system.intervals[0].xi_bar) < 1.0e-9);
    REQUIRE(rr.chain.inner_arcs.size() == 1);
    CHECK(rr.chain.inner_arcs[0].collision);
    CHECK(rr.chain.outer_arcs[0].homothetic);
    CHECK(rr.chain.max_residual() < 1.0e-8);
}

TEST_CASE("two-letter word realizes with interior interval membership") {
    const auto& S = setup();
    const Word w{{0, 1}, Word::Kind::Periodic};
    const RealizeResult rr = realize_periodic(S.curve, S.params, S.system, w);
    REQUIRE(rr.ok());
    CHECK(rr.miranda.pass());
    CHECK(rr.chain.max_residual() < 1.0e-8);
    for (int k = 0; k < 4; ++k) {
        const Interval& box = S.system.intervals[w.symbols[k / 2]];
        CHECK(box.contains(rr.chain.xi[k], 1.0e-12));
    }
    CHECK(rr.grad_inf < 1.0e-10);
}

TEST_CASE("symmetric word (1,2,2,1) realizes with exactly two radial arcs") {
    const auto& S = setup();
    const Word w{{0, 1, 1, 0}, Word::Kind::Periodic};
    REQUIRE(is_symmetric(w).symmetric);
    const RealizeResult rr = realize_periodic(S.curve, S.params, S.system, w);
    REQUIRE(rr.ok());
    int radial = 0;
    for (const auto& ia : rr.chain.inner_arcs)
        if (ia.collision) ++radial;
    for (const auto& oa : rr.chain.outer_arcs)
        if (oa.homothetic) ++radial;
    CHECK(radial == 2);
    CHECK(rr.chain.max_residual() < 1.0e-8);
}

TEST_CASE("non-symmetric realized words carry no radial arc") {
    const auto& S = setup();
    const Word w{{0, 0, 1, 2, 3}, Word::Kind::Periodic};
    REQUIRE_FALSE(is_symmetric(w).symmetric);
    const RealizeResult rr = realize_periodic(S.curve, S.params, S.system, w);
    REQUIRE(rr.ok());
    for (const auto& ia : rr.chain.inner_arcs) CHECK_FALSE(ia.collision);
    for (const auto& oa : rr.chain.outer_arcs) CHECK_FALSE(oa.homothetic);
}

TEST_CASE("fixed ends pinned at a periodic solution recover its interior points") {
    const auto& S = setup();
    const Word wp{{0, 1}, Word::Kind::Periodic};
    const RealizeResult per = realize_periodic(S.curve, S.params, S.system, wp);
    REQUIRE(per.ok());

    const Word wf{{0, 1, 0}, Word::Kind::Finite};
    const RealizeResult fix = realize_fixed_ends(S.curve, S.params, S.system, wf,
                                                 per.chain.xi[0], per.chain.xi[0]);
    REQUIRE(fix.ok());
    CHECK(std::abs(fix.chain.xi[1] - per.chain.xi[1]) < 1.0e-7);
    CHECK(std::abs(fix.chain.xi[2] - per.chain.xi[2]) < 1.0e-7);
    CHECK(std::abs(fix.chain.xi[3] - per.chain.xi[3]) < 1.0e-7);

    // pinned endpoints carry no residual requirement
    CHECK(std::isnan(fix.chain.snell_residuals.front()));
    CHECK(std::isnan(fix.chain.snell_residuals.back()));
    CHECK(fix.chain.max_residual() < 1.0e-8);
}

TEST_CASE("multi-start converges to one critical point when uniqueness holds") {
    const auto& S = setup();
    const Word w{{0, 1}, Word::Kind::Periodic};
    const UniquenessReport uq = uniqueness_check(S.curve, S.params, S.system, w);
    REQUIRE(uq.applicable);
    REQUIRE(uq.unique);

    RealizeOptions opt;
    opt.run_miranda = false;
    const RealizeResult ref = realize_periodic(S.curve, S.params, S.system, w, opt);
    REQUIRE(ref.ok());
    auto rng = oracles::rng(7);
    std::uniform_real_distribution<double> u01(0.05, 0.95);
    for (int seed = 0; seed < 10; ++seed) {
        RealizeOptions o = opt;
        for (int k = 0; k < 4; ++k) {
            const Interval& box = S.system.intervals[w.symbols[k / 2]];
            o.seed.push_back(box.alpha + u01(rng) * box.width());
        }
        const RealizeResult rr = realize_periodic(S.curve, S.params, S.system, w, o);
        REQUIRE(rr.ok());
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(rr.chain.xi[k] - ref.chain.xi[k]) < 1.0e-7);
    }
}

TEST_CASE("uniqueness check refuses degenerate configurations") {
    const BoundaryCurve circle = build_boundary(CurveSpec::ellipse(1.0, 1.0));
    // a hand-made degenerate interval system (the builder would refuse it)
    IntervalSystem sys;
    sys.intervals.push_back({-0.1, 0.1, 0.0, CentralConfiguration::Kind::Degenerate});
    sys.intervals.push_back({3.0, 3.2, 3.1, CentralConfiguration::Kind::Degenerate});
    sys.na = {{0, 1}, {0, 1}};
    const UniquenessReport uq = uniqueness_check(circle, setup().params, sys,
                                                 {{0, 1}, Word::Kind::Periodic});
    CHECK_FALSE(uq.applicable);
}

TEST_CASE("realization failure paths are reported, not thrown") {
    const auto& S = setup();
    const Word bad{{0, 2}, Word::Kind::Periodic}; // antipodal letters
    const RealizeResult rr = realize_periodic(S.curve, S.params, S.system, bad);
    CHECK_FALSE(rr.ok());

    const BilliardParams low(1.0, 1.0, 2.0, 0.01);
    const RealizeResult rl =
        realize_periodic(S.curve, low, S.system, {{0, 1}, Word::Kind::Periodic});
    CHECK(rl.status == RealizeStatus::MirandaNotPassed);
}

TEST_CASE("realization on a domain with concave boundary sections") {
    // the three-lobe minima sit on concave stretches where a second exterior
    // outer arc (near-chord) exists; realization must stay on the branch that
    // continues the homothetic bounce
    const BoundaryCurve lobe = build_boundary(
        CurveSpec::polar_fourier(1.0, {0.0, 0.0, 0.25}, {0.0, 0.0, 0.0, 0.0, 0.0, 0.08}));
    const BilliardParams P(1.0, 1.0, 2.0, 100.0);
    const IntervalSystem sys = build_interval_system(
        lobe, find_central_configurations(lobe), 0.015 * lobe.total_length());
    REQUIRE(sys.size() == 6);

    // a concave stretch: negative curvature at a radius minimum
    CHECK(lobe.curvature(sys.intervals[1].xi_bar) < 0.0);
    // outer arcs between coincident and nearby endpoints stay on the bounce
    // branch (finite duration), not the chord branch (vanishing duration)
    const double xi_min = sys.intervals[1].xi_bar;
    const OuterArc bounce = solve_outer_arc(lobe, P, xi_min, xi_min);
    const OuterArc near = solve_outer_arc(lobe, P, xi_min - 0.01, xi_min + 0.01);
    CHECK(bounce.duration > 0.5);
    CHECK(std::abs(near.duration - bounce.duration) < 0.1);

    const Word w{{0, 1, 2, 3, 4, 5}, Word::Kind::Periodic};
    REQUIRE(is_admissible(w, sys));
    const RealizeResult rr = realize_periodic(lobe, P, sys, w);
    REQUIRE(rr.ok());
    CHECK(rr.miranda.pass());
    CHECK(rr.chain.max_residual() < 1.0e-8);
}

TEST_CASE("fixed endpoints must lie in the terminal intervals") {
    const auto& S = setup();
    const Word w{{0, 1}, Word::Kind::Finite};
    const double mid_gap = 0.5 * (S.system.intervals[0].beta + S.system.intervals[1].alpha);
    CHECK_THROWS_AS(
        realize_fixed_ends(S.curve, S.params, S.system, w, mid_gap,
                           S.system.intervals[1].center()),
        PreconditionError);
}

TEST_CASE("total-length critical point matches the snell criterion") {
    const auto& S = setup();
    const Word w{{0, 3}, Word::Kind::Periodic};
    const RealizeResult rr = realize_periodic(S.curve, S.params, S.system, w);
    REQUIRE(rr.ok());
    const TotalLength tl = total_length(S.curve, S.params, rr.chain.xi, ChainMode::Periodic);
    double ginf = 0.0;
    for (double g : tl.gradient) ginf = std::max(ginf, std::abs(g));
    CHECK(ginf < 1.0e-8);
    CHECK(rr.chain.max_residual() < 1.0e-8);
    // residuals and gradient components agree junction by junction
    for (std::size_t k = 0; k < tl.gradient.size(); ++k)
        CHECK(std::abs(std::abs(tl.gradient[k]) - std::abs(rr.chain.snell_residuals[k])) <
              1.0e-10);
}
