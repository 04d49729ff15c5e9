#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "refrabill/errors.hpp"
#include "refrabill/words.hpp"

using namespace refrabill;

namespace {

IntervalSystem ellipse_system() {
    const BoundaryCurve curve = build_boundary(CurveSpec::ellipse(2.0, 1.0));
    const auto ccs = find_central_configurations(curve);
    return build_interval_system(curve, ccs, 0.05 * curve.total_length());
}

} // namespace

TEST_CASE("ellipse alphabet: opposite vertices excluded, self included") {
    const IntervalSystem sys = ellipse_system();
    REQUIRE(sys.size() == 4);
    // non-antipodal sets: everything except the opposite vertex
    CHECK(sys.na[0] == std::vector<int>{0, 1, 3});
    CHECK(sys.na[1] == std::vector<int>{0, 1, 2});
    CHECK(sys.na[2] == std::vector<int>{1, 2, 3});
    CHECK(sys.na[3] == std::vector<int>{0, 2, 3});
    for (int i = 0; i < 4; ++i) {
        CHECK(sys.na[i].size() >= 2);
        CHECK(sys.intervals[i].contains(sys.intervals[i].xi_bar));
    }
}

TEST_CASE("two antipodal configurations make the domain inadmissible") {
    // limacon r = 1 + 0.35 cos(theta): strict max at angle 0, strict min at pi,
    // antipodally directed (the focused-ellipse analog)
    const BoundaryCurve lim = build_boundary(CurveSpec::polar_fourier(1.0, {0.35}));
    const auto ccs = find_central_configurations(lim);
    int strict = 0;
    for (const auto& cc : ccs)
        if (cc.kind != CentralConfiguration::Kind::Degenerate) ++strict;
    CHECK(strict == 2);
    CHECK_THROWS_AS(build_interval_system(lim, ccs, 0.05 * lim.total_length()),
                    InadmissibleDomain);
}

TEST_CASE("circle plateau is inadmissible") {
    const BoundaryCurve circ = build_boundary(CurveSpec::ellipse(1.0, 1.0));
    const auto ccs = find_central_configurations(circ);
    CHECK_THROWS_AS(build_interval_system(circ, ccs, 0.3), InadmissibleDomain);
}

TEST_CASE("asymmetric three-lobe domain: all pairs non-antipodal") {
    // minima shifted off the maxima's antipodes
    const BoundaryCurve lobe =
        build_boundary(CurveSpec::polar_fourier(1.0, {0.0, 0.0, 0.25}, {0.0, 0.0, 0.0, 0.0, 0.0, 0.08}));
    const auto ccs = find_central_configurations(lobe);
    REQUIRE(ccs.size() == 6);
    const IntervalSystem sys = build_interval_system(lobe, ccs, 0.015 * lobe.total_length());
    for (int i = 0; i < sys.size(); ++i)
        CHECK(int(sys.na[i].size()) == sys.size());
}

TEST_CASE("word admissibility") {
    const IntervalSystem sys = ellipse_system();
    CHECK(is_admissible({{0, 1, 0, 1}, Word::Kind::Periodic}, sys));
    CHECK_FALSE(is_admissible({{0, 2}, Word::Kind::Periodic}, sys));
    CHECK(is_admissible({{0, 0}, Word::Kind::Periodic}, sys));
    CHECK(is_admissible({{0}, Word::Kind::Periodic}, sys));
    // finite words skip the wrap condition
    CHECK(is_admissible({{0, 1, 2}, Word::Kind::Finite}, sys));
    CHECK_FALSE(is_admissible({{0, 2, 1}, Word::Kind::Finite}, sys));
}

TEST_CASE("rotations of admissible periodic words stay admissible") {
    const IntervalSystem sys = ellipse_system();
    const std::vector<int> syms = {0, 1, 2, 1};
    for (int r = 0; r < 4; ++r) {
        std::vector<int> rot;
        for (int i = 0; i < 4; ++i) rot.push_back(syms[(i + r) % 4]);
        CHECK(is_admissible({rot, Word::Kind::Periodic}, sys));
    }
}

TEST_CASE("periodic word enumeration matches the transfer-matrix count") {
    const IntervalSystem sys = ellipse_system();
    // adjacency matrix powers count closed walks
    auto count_closed = [&](int n) {
        const int m = sys.size();
        std::vector<std::vector<long>> M(m, std::vector<long>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j : sys.na[i]) M[i][j] = 1;
        std::vector<std::vector<long>> P = M;
        for (int k = 1; k < n; ++k) {
            std::vector<std::vector<long>> Q(m, std::vector<long>(m, 0));
            for (int i = 0; i < m; ++i)
                for (int l = 0; l < m; ++l)
                    for (int j = 0; j < m; ++j) Q[i][j] += P[i][l] * M[l][j];
            P = Q;
        }
        long tr = 0;
        for (int i = 0; i < m; ++i) tr += P[i][i];
        return tr;
    };
    for (int n = 1; n <= 4; ++n) {
        long count = 0;
        for (const Word& w : enumerate_periodic_words(sys, n))
            if (w.length() == n) ++count;
        CHECK(count == count_closed(n));
    }
    CHECK(count_closed(1) + count_closed(2) + count_closed(3) + count_closed(4) == 128);
}

TEST_CASE("word metric values and bounds") {
    WordWindow a{{0, 1, 0, 1, 0}, 2, false};
    WordWindow b = a;
    const WordDistance zero = word_distance(a, b);
    CHECK(zero.lower == 0.0);
    CHECK(zero.upper > 0.0); // finite windows leave unseen tails

    b.symbols[2] = 3; // differ only at k = 0
    CHECK(word_distance(a, b).lower == doctest::Approx(1.0));

    b = a;
    b.symbols[1] = 3;
    b.symbols[3] = 3; // differ exactly at k = +-1
    CHECK(word_distance(a, b).lower == doctest::Approx(0.5));

    // periodic windows evaluate exactly
    WordWindow p1{{0, 1}, 0, true};
    WordWindow p2{{0, 1}, 0, true};
    const WordDistance pd = word_distance(p1, p2);
    CHECK(pd.lower == 0.0);
    CHECK(pd.upper == 0.0);

    // metric axioms on random periodic triples, within the exact evaluation
    auto rng = oracles::rng(99);
    std::uniform_int_distribution<int> sym(0, 3);
    for (int t = 0; t < 50; ++t) {
        WordWindow x{{sym(rng), sym(rng), sym(rng)}, 0, true};
        WordWindow y{{sym(rng), sym(rng), sym(rng)}, 0, true};
        WordWindow z{{sym(rng), sym(rng), sym(rng)}, 0, true};
        const double dxy = word_distance(x, y).lower;
        const double dyx = word_distance(y, x).lower;
        const double dxz = word_distance(x, z).lower;
        const double dzy = word_distance(z, y).lower;
        CHECK(dxy == doctest::Approx(dyx).epsilon(1e-14));
        CHECK(dxy <= dxz + dzy + 1.0e-12);
        if (x.symbols == y.symbols) CHECK(dxy == 0.0);
    }
}

TEST_CASE("word symmetry detection") {
    const SymmetryInfo s1 = is_symmetric({{0, 1, 1, 0}, Word::Kind::Periodic});
    CHECK(s1.symmetric);
    bool has_gap_1 = false;
    for (const auto& ax : s1.axes)
        if (ax.type == SymmetryAxis::Type::Gap && ax.position == 1) has_gap_1 = true;
    CHECK(has_gap_1);

    // (1,2,1,4) is reflection-symmetric through its 2nd and 4th letters
    const SymmetryInfo s2 = is_symmetric({{0, 1, 0, 3}, Word::Kind::Periodic});
    CHECK(s2.symmetric);
    bool gap_axis = false, elem_axis = false;
    for (const auto& ax : s2.axes)
        (ax.type == SymmetryAxis::Type::Gap ? gap_axis : elem_axis) = true;
    CHECK(elem_axis);
    CHECK_FALSE(gap_axis);
    // a genuinely asymmetric cyclic word
    CHECK_FALSE(is_symmetric({{0, 0, 1, 2, 3}, Word::Kind::Periodic}).symmetric);
    CHECK(is_symmetric({{0}, Word::Kind::Periodic}).symmetric);
    CHECK(is_symmetric({{0, 1}, Word::Kind::Periodic}).symmetric);
    CHECK(is_symmetric({{0, 1, 2}, Word::Kind::Finite}).symmetric == false);
    CHECK(is_symmetric({{0, 1, 0}, Word::Kind::Finite}).symmetric);
}
