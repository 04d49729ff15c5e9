#include "refrabill/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "refrabill/errors.hpp"

namespace refrabill {

namespace {

double wrap_dist(const BoundaryCurve& curve, double a, double b) {
    const double L = curve.total_length();
    double d = std::abs(curve.wrap(a) - curve.wrap(b));
    return std::min(d, L - d);
}

// signed wrap difference a - b in (-L/2, L/2]
double wrap_diff(const BoundaryCurve& curve, double a, double b) {
    const double L = curve.total_length();
    double d = std::fmod(curve.wrap(a) - curve.wrap(b), L);
    if (d > 0.5 * L) d -= L;
    if (d <= -0.5 * L) d += L;
    return d;
}

// (xi, a)-chart image of one return-map application
std::array<double, 2> chart_map(const BoundaryCurve& curve, const BilliardParams& params,
                                const IntervalSystem& system, double xi_ref, double xi,
                                double a) {
    const SurfaceState s = make_outward_state(curve, params, xi, a);
    const StepResult r = return_map(curve, params, system, s, /*permissive=*/true);
    if (!r.ok())
        throw PreconditionError("return map failed while linearizing: " +
                                to_string(r.status));
    return {wrap_diff(curve, r.next.xi, xi_ref), r.next.tangential(curve)};
}

// interior containment of an inner arc, Chebyshev-sampled in tau
bool arc_inside(const BoundaryCurve& curve, const InnerArc& arc) {
    const double scale = curve.max_radius();
    const int n = 128;
    for (int k = 1; k < n; ++k) {
        const double frac = 0.5 * (1.0 - std::cos(std::numbers::pi * k / n));
        if (frac < 0.02 || frac > 0.98) continue;
        if (curve.radial_gap(arc.position_tau(frac * arc.Ttilde)) > -1.0e-10 * scale)
            return false;
    }
    return true;
}

double median_ratio(const std::vector<double>& d) {
    std::vector<double> ratios;
    for (std::size_t k = 0; k + 1 < d.size(); ++k)
        if (d[k] > 0.0 && d[k + 1] > 0.0) ratios.push_back(d[k + 1] / d[k]);
    if (ratios.empty()) return 0.0;
    std::sort(ratios.begin(), ratios.end());
    return ratios[ratios.size() / 2];
}

} // namespace

SaddleReport saddle_spectrum(const BoundaryCurve& curve, const BilliardParams& params,
                             const IntervalSystem& system, int cc_index) {
    if (cc_index < 0 || cc_index >= system.size())
        throw PreconditionError("central configuration index out of range");
    const Interval& iv = system.intervals[cc_index];
    if (iv.kind == CentralConfiguration::Kind::Degenerate)
        throw PreconditionError("degenerate central configuration refused");

    SaddleReport rep;
    rep.cc_index = cc_index;
    rep.h = params.h;
    const double xi_bar = iv.xi_bar;

    // the homothetic state must be (numerically) a fixed point
    {
        const auto img = chart_map(curve, params, system, xi_bar, xi_bar, 0.0);
        rep.fixed_point_drift = std::max(std::abs(img[0]), std::abs(img[1]));
        if (rep.fixed_point_drift > 1.0e-6)
            throw PreconditionError("homothetic state drifts under the return map by " +
                                    std::to_string(rep.fixed_point_drift));
    }

    // Richardson-combined central differences
    auto jac_at = [&](double delta) {
        std::array<std::array<double, 2>, 2> J{};
        const auto xp = chart_map(curve, params, system, xi_bar, xi_bar + delta, 0.0);
        const auto xm = chart_map(curve, params, system, xi_bar, xi_bar - delta, 0.0);
        const auto ap = chart_map(curve, params, system, xi_bar, xi_bar, delta);
        const auto am = chart_map(curve, params, system, xi_bar, xi_bar, -delta);
        J[0][0] = (xp[0] - xm[0]) / (2.0 * delta);
        J[1][0] = (xp[1] - xm[1]) / (2.0 * delta);
        J[0][1] = (ap[0] - am[0]) / (2.0 * delta);
        J[1][1] = (ap[1] - am[1]) / (2.0 * delta);
        return J;
    };
    const auto J1 = jac_at(1.0e-6);
    const auto J2 = jac_at(1.0e-7);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            rep.jacobian[r][c] = (100.0 * J2[r][c] - J1[r][c]) / 99.0;

    const double tr = rep.jacobian[0][0] + rep.jacobian[1][1];
    rep.det = rep.jacobian[0][0] * rep.jacobian[1][1] -
              rep.jacobian[0][1] * rep.jacobian[1][0];
    rep.det_ok = std::abs(rep.det - 1.0) < 5.0e-3;

    const double disc = tr * tr - 4.0 * rep.det;
    if (std::abs(disc) < 1.0e-6 * std::max(1.0, tr * tr)) {
        rep.classification = SaddleReport::Type::ParabolicWithinTol;
        rep.eig1 = rep.eig2 = 0.5 * tr;
    } else if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        rep.eig1 = 0.5 * (tr + sq);
        rep.eig2 = 0.5 * (tr - sq);
        rep.classification = (std::abs(rep.eig1) > 1.0 || std::abs(rep.eig2) > 1.0)
                                 ? SaddleReport::Type::Saddle
                                 : SaddleReport::Type::Elliptic;
    } else {
        const double sq = std::sqrt(-disc);
        rep.eig1 = {0.5 * tr, 0.5 * sq};
        rep.eig2 = {0.5 * tr, -0.5 * sq};
        rep.classification = SaddleReport::Type::Elliptic;
    }
    return rep;
}

HeteroclinicReport heteroclinic_realize(const BoundaryCurve& curve,
                                        const BilliardParams& params,
                                        const IntervalSystem& system, int i, int j, int pad,
                                        const std::vector<int>& bridge,
                                        const RealizeOptions& options) {
    if (i == j) throw PreconditionError("heteroclinic endpoints must differ");
    if (pad < 1) throw PreconditionError("padding must be at least 1");
    for (int s : {i, j})
        if (system.intervals[s].kind == CentralConfiguration::Kind::Degenerate)
            throw PreconditionError("degenerate central configuration refused");

    HeteroclinicReport rep;
    rep.word.kind = Word::Kind::Finite;
    for (int k = 0; k < pad; ++k) rep.word.symbols.push_back(i);
    for (int s : bridge) rep.word.symbols.push_back(s);
    for (int k = 0; k < pad; ++k) rep.word.symbols.push_back(j);
    if (!is_admissible(rep.word, system))
        throw PreconditionError("padded word is not admissible");

    rep.realization = realize_fixed_ends(curve, params, system, rep.word,
                                         system.intervals[i].xi_bar,
                                         system.intervals[j].xi_bar, options);
    if (!rep.realization.ok()) return rep;

    const std::vector<double>& xi = rep.realization.chain.xi;
    const int n = rep.word.length();
    // per-symbol distance of the entry parameter to the saddle's direction;
    // the pinned chain ends (symbols 0 and n-1) are excluded
    for (int k = 1; k < pad; ++k)
        rep.lead_dist.push_back(wrap_dist(curve, xi[2 * k], system.intervals[i].xi_bar));
    for (int k = 0; k < pad - 1; ++k) {
        const int sym = n - pad + k;
        rep.trail_dist.push_back(
            wrap_dist(curve, xi[2 * sym], system.intervals[j].xi_bar));
    }
    // leading distances grow away from the saddle (ratio ~ lambda_i), trailing
    // ones decay into it (ratio ~ 1/lambda_j)
    rep.lead_rate = median_ratio(rep.lead_dist);
    rep.trail_rate = median_ratio(rep.trail_dist);
    return rep;
}

ThresholdRow threshold_row(const BoundaryCurve& curve, const BilliardParams& P,
                           const IntervalSystem& system, const std::vector<Word>& words) {
    {
        ThresholdRow row;
        row.h = P.h;

        // containment of sampled TnT arcs
        row.containment = true;
        for (int i = 0; i < system.size() && row.containment; ++i) {
            for (int j : system.na[i]) {
                const Interval& a = system.intervals[i];
                const Interval& b = system.intervals[j];
                for (double fa : {0.0, 0.5, 1.0}) {
                    for (double fb : {0.0, 0.5, 1.0}) {
                        const Vec2 p0 = curve.point(a.alpha + fa * a.width());
                        const Vec2 p1 = curve.point(b.alpha + fb * b.width());
                        if (std::abs(angle_between(p0, p1)) <= 1.0e-9) continue;
                        try {
                            const InnerArc arc = solve_inner_arc(P, p0, p1);
                            if (!arc_inside(curve, arc)) row.containment = false;
                        } catch (const ArcError&) {
                            row.containment = false;
                        }
                        if (!row.containment) break;
                    }
                    if (!row.containment) break;
                }
                if (!row.containment) break;
            }
        }

        // interval-level change-sign condition: uniform opposite signs of the
        // junction derivative at the two interval ends
        row.change_sign = true;
        for (int i = 0; i < system.size() && row.change_sign; ++i) {
            const Interval& iv = system.intervals[i];
            int sign_alpha = 0, sign_beta = 0;
            for (double fe : {0.0, 0.5, 1.0}) {
                const double xi_e = iv.alpha + fe * iv.width();
                for (int j : system.na[i]) {
                    const Interval& jv = system.intervals[j];
                    for (double fi : {0.0, 0.5, 1.0}) {
                        const double xi_i = jv.alpha + fi * jv.width();
                        try {
                            const double fa =
                                outer_partials(curve, P, xi_e, iv.alpha).second +
                                inner_partials(curve, P, iv.alpha, xi_i).first;
                            const double fb =
                                outer_partials(curve, P, xi_e, iv.beta).second +
                                inner_partials(curve, P, iv.beta, xi_i).first;
                            const int sa = fa > 0.0 ? 1 : -1;
                            const int sb = fb > 0.0 ? 1 : -1;
                            if (sa == sb) row.change_sign = false;
                            if (sign_alpha == 0) sign_alpha = sa;
                            if (sign_beta == 0) sign_beta = sb;
                            if (sa != sign_alpha || sb != sign_beta)
                                row.change_sign = false;
                        } catch (const ArcError&) {
                            row.change_sign = false;
                        }
                        if (!row.change_sign) break;
                    }
                    if (!row.change_sign) break;
                }
                if (!row.change_sign) break;
            }
        }

        // per-word face certificates
        row.words_pass = true;
        for (const Word& w : words) {
            const MirandaReport mr =
                miranda_check(curve, P, system, w, ChainMode::Periodic);
            if (!mr.pass()) {
                row.words_pass = false;
                break;
            }
        }

        // saddle classification of every letter
        row.saddles = true;
        for (int i = 0; i < system.size(); ++i) {
            try {
                const SaddleReport sr = saddle_spectrum(curve, P, system, i);
                if (sr.classification != SaddleReport::Type::Saddle) row.saddles = false;
            } catch (const PreconditionError&) {
                row.saddles = false;
            }
            if (!row.saddles) break;
        }

        return row;
    }
}

ThresholdScan assemble_threshold_scan(const BoundaryCurve& curve,
                                      const IntervalSystem& system,
                                      std::vector<ThresholdRow> rows) {
    ThresholdScan scan;
    scan.rows = std::move(rows);

    // Euclidean change-sign precondition, independent of h
    scan.euclidean_change_sign = true;
    for (const Interval& iv : system.intervals)
        if (!(curve.radius_d1(iv.alpha) * curve.radius_d1(iv.beta) < 0.0))
            scan.euclidean_change_sign = false;

    // thresholds: first grid value from which the criterion holds onward
    auto first_stable = [&](auto&& get) {
        for (std::size_t k = 0; k < scan.rows.size(); ++k) {
            bool all = true;
            for (std::size_t l = k; l < scan.rows.size(); ++l) all = all && get(scan.rows[l]);
            if (all) return scan.rows[k].h;
        }
        return 0.0;
    };
    scan.h0_hat = first_stable([](const ThresholdRow& r) { return r.containment; });
    scan.h1_hat = first_stable([](const ThresholdRow& r) {
        return r.containment && r.change_sign && r.words_pass;
    });

    // monotone pass pattern
    auto monotone = [&](auto&& get) {
        bool seen = false;
        for (const auto& r : scan.rows) {
            if (get(r)) seen = true;
            else if (seen) return false;
        }
        return true;
    };
    scan.monotone_containment = monotone([](const ThresholdRow& r) { return r.containment; });
    scan.monotone_change_sign = monotone([](const ThresholdRow& r) { return r.change_sign; });
    scan.monotone_words = monotone([](const ThresholdRow& r) { return r.words_pass; });
    scan.monotone_saddles = monotone([](const ThresholdRow& r) { return r.saddles; });
    scan.monotone = scan.monotone_containment && scan.monotone_change_sign &&
                    scan.monotone_words && scan.monotone_saddles;
    return scan;
}

ThresholdScan threshold_scan(const BoundaryCurve& curve, const BilliardParams& params_base,
                             const IntervalSystem& system, const std::vector<Word>& words,
                             const std::vector<double>& h_grid) {
    std::vector<ThresholdRow> rows;
    for (double h : h_grid)
        rows.push_back(threshold_row(curve, params_base.with_h(h), system, words));
    return assemble_threshold_scan(curve, system, std::move(rows));
}

SensitivityReport sensitivity_probe(const BoundaryCurve& curve, const BilliardParams& params,
                                    const IntervalSystem& system, const Word& word1,
                                    const Word& word2, int depth) {
    SensitivityReport rep;

    auto realize_window = [&](const Word& w) {
        // finite window of 2*depth+1 symbols by periodic extension
        Word win;
        win.kind = Word::Kind::Finite;
        const int n = w.length();
        for (int k = -depth; k <= depth; ++k)
            win.symbols.push_back(w.symbols[((k % n) + n) % n]);
        const double xa = system.intervals[win.symbols.front()].center();
        const double xb = system.intervals[win.symbols.back()].center();
        RealizeOptions opt;
        opt.run_miranda = false;
        return realize_fixed_ends(curve, params, system, win, xa, xb, opt);
    };

    const RealizeResult r1 = realize_window(word1);
    const RealizeResult r2 = realize_window(word2);
    rep.status1 = r1.status;
    rep.status2 = r2.status;
    if (!r1.ok() || !r2.ok()) return rep;

    // centered state of each realization: departing outer velocity at the
    // entry parameter of the middle symbol
    auto center_state = [&](const RealizeResult& r) {
        const int k = 2 * depth; // chain index of the middle symbol's entry
        const OuterArc& oa = r.chain.outer_arcs[depth];
        return std::pair<double, double>(r.chain.xi[k],
                                         oa.v0.dot(curve.frame(r.chain.xi[k]).tangent));
    };
    const auto [x1, a1] = center_state(r1);
    const auto [x2, a2] = center_state(r2);
    rep.xi_center_1 = x1;
    rep.xi_center_2 = x2;
    rep.state_separation = std::hypot(wrap_diff(curve, x1, x2), a1 - a2);

    // both inputs are periodic words, so the metric is evaluated exactly on
    // their bi-infinite extensions
    const WordWindow ww1{word1.symbols, 0, true};
    const WordWindow ww2{word2.symbols, 0, true};
    rep.word_dist = word_distance(ww1, ww2);
    return rep;
}

} // namespace refrabill
