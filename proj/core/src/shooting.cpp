#include "refrabill/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "refrabill/errors.hpp"
#include "refrabill/quadrature.hpp"
#include "refrabill/rootfind.hpp"

namespace refrabill {

namespace {

constexpr double kQuadTol = 1.0e-11;

int chain_size(const Word& word, ChainMode mode) {
    return mode == ChainMode::Periodic ? 2 * word.length() : 2 * word.length() - 1;
}

// Interval owning chain parameter k (same formula in both modes).
const Interval& box_of(const IntervalSystem& system, const Word& word, int k) {
    return system.intervals[word.symbols[std::min(k / 2, word.length() - 1)]];
}

// Single gradient component: only the two arcs meeting at xi[k] matter.
double component_Fk(const BoundaryCurve& curve, const BilliardParams& params,
                    const std::vector<double>& xi, ChainMode mode, int k) {
    const int m = int(xi.size());
    if (k % 2 == 1) { // outer arrives, inner departs
        const auto oe = outer_partials(curve, params, xi[k - 1], xi[k]);
        const auto in = inner_partials(curve, params, xi[k], xi[(k + 1) % m]);
        return oe.second + in.first;
    }
    const int kprev = (mode == ChainMode::Periodic) ? (k - 1 + m) % m : k - 1;
    const auto in = inner_partials(curve, params, xi[kprev], xi[k]);
    const auto oe = outer_partials(curve, params, xi[k], xi[k + 1]);
    return in.second + oe.first;
}

// Dense LU solve with partial pivoting; the systems here are tiny.
bool lu_solve(std::vector<double> a, std::vector<double>& b, int n) {
    std::vector<int> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
        if (std::abs(a[p * n + c]) < 1.0e-300) return false;
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(a[c * n + j], a[p * n + j]);
            std::swap(b[c], b[p]);
        }
        for (int r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / a[c * n + c];
            for (int j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
            b[r] -= f * b[c];
        }
    }
    for (int c = n - 1; c >= 0; --c) {
        for (int j = c + 1; j < n; ++j) b[c] -= a[c * n + j] * b[j];
        b[c] /= a[c * n + c];
    }
    return true;
}

} // namespace

double Concatenation::max_residual() const {
    double m = 0.0;
    for (double r : snell_residuals)
        if (!std::isnan(r)) m = std::max(m, std::abs(r));
    return m;
}

Concatenation build_concatenation(const BoundaryCurve& curve, const BilliardParams& params,
                                  const Word& word, const std::vector<double>& xi,
                                  ChainMode mode) {
    const int m = chain_size(word, mode);
    if (int(xi.size()) != m)
        throw PreconditionError("parameter vector size does not match the word");

    Concatenation c;
    c.word = word;
    c.mode = mode;
    c.xi = xi;
    const int n_pairs = (mode == ChainMode::Periodic) ? m / 2 : (m - 1) / 2;
    const double E = params.inner_energy();

    for (int j = 0; j < n_pairs; ++j) {
        c.outer_arcs.push_back(solve_outer_arc(curve, params, xi[2 * j], xi[2 * j + 1]));
        const Vec2 p0 = curve.point(xi[2 * j + 1]);
        const Vec2 p1 = curve.point(xi[(2 * j + 2) % m]);
        c.inner_arcs.push_back(solve_inner_arc(params, p0, p1, HomotopyClass::TnT));

        const OuterArc& oa = c.outer_arcs.back();
        const InnerArc& ia = c.inner_arcs.back();
        c.total_jacobi_length += integrate_adaptive(
            [&](double s) { return std::sqrt(2.0) * v_outer(params, oa.position(s)); }, 0.0,
            oa.duration, kQuadTol);
        if (std::abs(angle_between(p0, p1)) <= 1.0e-9)
            c.total_jacobi_length += radial_inner_length(E, params.mu, p0.norm()) +
                                     radial_inner_length(E, params.mu, p1.norm());
        else
            c.total_jacobi_length += inner_length_closed_form(ia);
        c.period += oa.duration + ia.duration;
    }

    c.snell_residuals.assign(m, std::numeric_limits<double>::quiet_NaN());
    for (int k = 0; k < m; ++k) {
        if (mode == ChainMode::FixedEnds && (k == 0 || k == m - 1)) continue;
        if (k % 2 == 1) {
            const int j = (k - 1) / 2;
            c.snell_residuals[k] =
                snell_residual(curve, params, c.outer_arcs[j], c.inner_arcs[j], xi[k]);
        } else {
            const int j = k / 2;
            const int jprev = (mode == ChainMode::Periodic) ? (j + n_pairs - 1) % n_pairs : j - 1;
            c.snell_residuals[k] =
                snell_residual(curve, params, c.outer_arcs[j], c.inner_arcs[jprev], xi[k]);
        }
    }
    return c;
}

MirandaReport miranda_check(const BoundaryCurve& curve, const BilliardParams& params,
                            const IntervalSystem& system, const Word& word, ChainMode mode,
                            double xi_a, double xi_b) {
    MirandaReport report;
    if (!is_admissible(word, system)) {
        report.status = MirandaStatus::ArcFailure;
        report.note = "word not admissible";
        return report;
    }
    const int m = chain_size(word, mode);
    const int k_lo = (mode == ChainMode::Periodic) ? 0 : 1;
    const int k_hi = (mode == ChainMode::Periodic) ? m - 1 : m - 2;
    const int d = k_hi - k_lo + 1;
    if (d < 1) {
        report.status = MirandaStatus::ArcFailure;
        report.note = "no free coordinates";
        return report;
    }

    std::vector<double> base(m);
    for (int k = 0; k < m; ++k) base[k] = box_of(system, word, k).center();
    if (mode == ChainMode::FixedEnds) {
        base[0] = xi_a;
        base[m - 1] = xi_b;
    }

    bool all_pass = true;
    bool any_mixed = false;
    for (int k = k_lo; k <= k_hi; ++k) {
        FaceSignReport fr;
        fr.coordinate = k;

        // F_k depends only on the two neighbouring parameters, so uniformity
        // over the rest of the face is exact; only the free neighbours are
        // gridded.
        const int m_all = int(base.size());
        std::vector<int> nb;
        if (mode == ChainMode::Periodic) {
            nb = {(k - 1 + m_all) % m_all, (k + 1) % m_all};
        } else {
            if (k - 1 >= k_lo) nb.push_back(k - 1);
            if (k + 1 <= k_hi) nb.push_back(k + 1);
        }
        const int nn = int(nb.size());
        int q = 5;

        for (int doubling = 0;; ++doubling) {
            int n_pts = 1;
            for (int i = 0; i < nn; ++i) n_pts *= q;

            double lo_min = 1.0e300, lo_max = -1.0e300, hi_min = 1.0e300, hi_max = -1.0e300;
            try {
                for (int pt = 0; pt < n_pts; ++pt) {
                    std::vector<double> x = base;
                    int digit = pt;
                    for (int i = 0; i < nn; ++i) {
                        const Interval& bx = box_of(system, word, nb[i]);
                        const double t = double(digit % q) / (q - 1);
                        digit /= q;
                        x[nb[i]] = bx.alpha + t * (bx.beta - bx.alpha);
                    }
                    const Interval& bk = box_of(system, word, k);
                    x[k] = bk.alpha;
                    const double flo = component_Fk(curve, params, x, mode, k);
                    x[k] = bk.beta;
                    const double fhi = component_Fk(curve, params, x, mode, k);
                    lo_min = std::min(lo_min, flo);
                    lo_max = std::max(lo_max, flo);
                    hi_min = std::min(hi_min, fhi);
                    hi_max = std::max(hi_max, fhi);
                }
            } catch (const ArcError& e) {
                report.status = MirandaStatus::ArcFailure;
                report.note = "arc solver failed on face of coordinate " +
                              std::to_string(k) + ": " + e.what();
                report.faces.push_back(fr);
                return report;
            }
            fr.lo_min = lo_min;
            fr.lo_max = lo_max;
            fr.hi_min = hi_min;
            fr.hi_max = hi_max;
            fr.samples_per_face = std::max(1, n_pts);
            fr.doublings = doubling;

            // a decisively mixed face cannot become uniform with more samples
            const bool mixed_lo = lo_min < 0.0 && lo_max > 0.0;
            const bool mixed_hi = hi_min < 0.0 && hi_max > 0.0;
            if (mixed_lo || mixed_hi) break;

            // densify while a face's sign margin is thin against the grid
            // resolution (spread per grid step, which halves with doubling)
            const double res_lo = (lo_max - lo_min) / (q - 1);
            const double res_hi = (hi_max - hi_min) / (q - 1);
            const double min_lo_abs = std::min(std::abs(lo_min), std::abs(lo_max));
            const double min_hi_abs = std::min(std::abs(hi_min), std::abs(hi_max));
            const bool thin = (min_lo_abs < 10.0 * res_lo) || (min_hi_abs < 10.0 * res_hi);
            if (thin && doubling < 4 && nn > 0) {
                q *= 2;
                continue;
            }
            break;
        }

        const bool lo_neg = fr.lo_max < 0.0, lo_pos = fr.lo_min > 0.0;
        const bool hi_neg = fr.hi_max < 0.0, hi_pos = fr.hi_min > 0.0;
        fr.opposite_uniform = (lo_neg && hi_pos) || (lo_pos && hi_neg);
        if (!fr.opposite_uniform) {
            all_pass = false;
            if ((!lo_neg && !lo_pos) || (!hi_neg && !hi_pos)) any_mixed = true;
        }
        report.faces.push_back(fr);
    }

    report.status = all_pass ? MirandaStatus::Pass
                             : (any_mixed ? MirandaStatus::Inconclusive : MirandaStatus::Fail);
    return report;
}

namespace {

struct NewtonSetup {
    const BoundaryCurve* curve;
    const BilliardParams* params;
    const IntervalSystem* system;
    const Word* word;
    ChainMode mode;
    std::vector<double> xi; ///< full chain vector, fixed ends already set
    int k_lo, k_hi;         ///< free coordinate range

    int dims() const { return k_hi - k_lo + 1; }

    std::vector<double> grad() const {
        const TotalLength tl = total_length(*curve, *params, xi, mode);
        std::vector<double> g(dims());
        for (int i = 0; i < dims(); ++i) g[i] = tl.gradient[k_lo + i];
        return g;
    }

    void clip() {
        for (int k = k_lo; k <= k_hi; ++k) {
            const Interval& bx = box_of(*system, *word, k);
            xi[k] = std::clamp(xi[k], bx.alpha, bx.beta);
        }
    }
};

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double two_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// One nonlinear Gauss-Seidel sweep: bisect each component in its own
// coordinate. Helps when the Newton matrix is singular at a symmetric seed.
void coordinate_sweep(NewtonSetup& st) {
    for (int k = st.k_lo; k <= st.k_hi; ++k) {
        const Interval& bx = box_of(*st.system, *st.word, k);
        auto fk = [&](double x) {
            std::vector<double> xi = st.xi;
            xi[k] = x;
            return component_Fk(*st.curve, *st.params, xi, st.mode, k);
        };
        try {
            const double fa = fk(bx.alpha), fb = fk(bx.beta);
            if ((fa < 0.0) != (fb < 0.0))
                st.xi[k] = bisect(fk, bx.alpha, bx.beta, fa, fb, 1.0e-12 * bx.width());
        } catch (const ArcError&) {
            // leave the coordinate where it is
        }
    }
}

RealizeResult realize_impl(NewtonSetup st, const RealizeOptions& options,
                           double xi_a, double xi_b) {
    RealizeResult res;
    if (!is_admissible(*st.word, *st.system)) {
        res.status = RealizeStatus::ArcFailure;
        res.note = "word not admissible";
        return res;
    }
    if (options.run_miranda) {
        res.miranda = miranda_check(*st.curve, *st.params, *st.system, *st.word, st.mode,
                                    xi_a, xi_b);
        if (!res.miranda.pass()) {
            res.status = RealizeStatus::MirandaNotPassed;
            res.note = "face sign certificate not obtained";
            return res;
        }
    }

    const double L = st.curve->total_length();
    const double fd_step = options.fd_step_rel * L;
    const int d = st.dims();

    std::vector<double> g;
    try {
        g = st.grad();
    } catch (const ArcError& e) {
        res.status = RealizeStatus::ArcFailure;
        res.note = e.what();
        return res;
    }

    int it = 0;
    int slow = 0;
    for (; it < options.max_iterations; ++it) {
        if (inf_norm(g) < options.grad_tol) break;

        // coordinate-wise bisection rescues two regimes: the Newton matrix is
        // unusable, or damped steps crawl (each component is monotone in its
        // own coordinate at large h, so the sweep contracts reliably)
        const bool want_sweep = slow >= 3;

        bool stepped = false;
        if (!want_sweep) {
            // forward-difference Jacobian of the analytic gradient
            std::vector<double> J(d * d);
            bool fd_ok = true;
            for (int c = 0; c < d && fd_ok; ++c) {
                NewtonSetup probe = st;
                const Interval& bx = box_of(*st.system, *st.word, st.k_lo + c);
                double step = fd_step;
                if (st.xi[st.k_lo + c] + step > bx.beta) step = -fd_step;
                probe.xi[st.k_lo + c] += step;
                try {
                    const std::vector<double> gp = probe.grad();
                    for (int r = 0; r < d; ++r) J[r * d + c] = (gp[r] - g[r]) / step;
                } catch (const ArcError&) {
                    fd_ok = false;
                }
            }
            std::vector<double> step(g);
            for (double& s : step) s = -s;
            if (fd_ok && lu_solve(J, step, d)) {
                const double g0 = two_norm(g);
                for (double alpha = 1.0; alpha > 1.0e-6; alpha *= 0.5) {
                    NewtonSetup trial = st;
                    for (int i = 0; i < d; ++i) trial.xi[st.k_lo + i] += alpha * step[i];
                    trial.clip();
                    try {
                        const std::vector<double> gt = trial.grad();
                        if (two_norm(gt) < (1.0 - 1.0e-4 * alpha) * g0 ||
                            inf_norm(gt) < options.grad_tol) {
                            slow = (two_norm(gt) > 0.5 * g0) ? slow + 1 : 0;
                            st = trial;
                            g = gt;
                            stepped = true;
                            break;
                        }
                    } catch (const ArcError&) {
                        // shrink further
                    }
                }
            }
        }
        if (!stepped) {
            coordinate_sweep(st);
            slow = 0;
            try {
                g = st.grad();
            } catch (const ArcError& e) {
                res.status = RealizeStatus::ArcFailure;
                res.note = e.what();
                return res;
            }
        }
    }

    res.iterations = it;
    res.grad_inf = inf_norm(g);
    if (res.grad_inf >= options.grad_tol) {
        res.status = RealizeStatus::NoConvergence;
        res.note = "gradient stalled at " + std::to_string(res.grad_inf);
        try {
            res.chain = build_concatenation(*st.curve, *st.params, *st.word, st.xi, st.mode);
        } catch (const ArcError&) {
        }
        return res;
    }

    try {
        res.chain = build_concatenation(*st.curve, *st.params, *st.word, st.xi, st.mode);
    } catch (const ArcError& e) {
        res.status = RealizeStatus::ArcFailure;
        res.note = e.what();
        return res;
    }
    res.status = RealizeStatus::Converged;

    for (int k = st.k_lo; k <= st.k_hi; ++k) {
        const Interval& bx = box_of(*st.system, *st.word, k);
        const double margin = 1.0e-9 * bx.width();
        if (st.xi[k] < bx.alpha + margin || st.xi[k] > bx.beta - margin) {
            res.boundary_critical_point = true;
            res.note = "critical point sits on a box face (coordinate " +
                       std::to_string(k) + ")";
        }
    }
    if (!res.chain.realized()) {
        res.status = RealizeStatus::NoConvergence;
        res.note = "junction residual above 1e-8 after convergence";
    }
    return res;
}

} // namespace

RealizeResult realize_periodic(const BoundaryCurve& curve, const BilliardParams& params,
                               const IntervalSystem& system, const Word& word,
                               const RealizeOptions& options) {
    const int m = 2 * word.length();
    NewtonSetup st{&curve, &params, &system, &word, ChainMode::Periodic, {}, 0, m - 1};
    st.xi.resize(m);
    for (int k = 0; k < m; ++k) st.xi[k] = box_of(system, word, k).center();
    if (!options.seed.empty()) {
        if (int(options.seed.size()) != m)
            throw PreconditionError("seed size does not match the word");
        st.xi = options.seed;
        st.clip();
    }
    return realize_impl(std::move(st), options, 0.0, 0.0);
}

RealizeResult realize_fixed_ends(const BoundaryCurve& curve, const BilliardParams& params,
                                 const IntervalSystem& system, const Word& word,
                                 double xi_a, double xi_b, const RealizeOptions& options) {
    if (word.length() < 2)
        throw PreconditionError("fixed-ends realization needs a word of length >= 2");
    const int m = 2 * word.length() - 1;
    NewtonSetup st{&curve, &params, &system, &word, ChainMode::FixedEnds, {}, 1, m - 2};
    st.xi.resize(m);
    for (int k = 0; k < m; ++k) st.xi[k] = box_of(system, word, k).center();
    st.xi[0] = xi_a;
    st.xi[m - 1] = xi_b;
    if (!options.seed.empty()) {
        if (int(options.seed.size()) != m)
            throw PreconditionError("seed size does not match the word");
        st.xi = options.seed;
        st.xi[0] = xi_a;
        st.xi[m - 1] = xi_b;
        st.clip();
    }
    if (!system.intervals[word.symbols.front()].contains(xi_a, 1.0e-12) ||
        !system.intervals[word.symbols.back()].contains(xi_b, 1.0e-12))
        throw PreconditionError("fixed endpoints must lie in the terminal intervals");
    return realize_impl(std::move(st), options, xi_a, xi_b);
}

UniquenessReport uniqueness_check(const BoundaryCurve& curve, const BilliardParams& params,
                                  const IntervalSystem& system, const Word& word) {
    UniquenessReport rep;
    if (!is_admissible(word, system)) {
        rep.note = "word not admissible";
        return rep;
    }

    // preconditions: non-degenerate configurations, radius strictly convex or
    // concave on each interval that the word uses
    for (int s : word.symbols) {
        const Interval& iv = system.intervals[s];
        if (iv.kind == CentralConfiguration::Kind::Degenerate) {
            rep.note = "degenerate central configuration in interval " + std::to_string(s + 1);
            return rep;
        }
        const double sign0 = curve.radius_d2(iv.center()) > 0.0 ? 1.0 : -1.0;
        for (int i = 0; i <= 8; ++i) {
            const double xi = iv.alpha + iv.width() * i / 8.0;
            if (curve.radius_d2(xi) * sign0 <= 0.0) {
                rep.note = "radius not strictly convex/concave on interval " +
                           std::to_string(s + 1);
                return rep;
            }
        }
    }
    rep.applicable = true;

    const int m = 2 * word.length();
    std::vector<double> base(m);
    for (int k = 0; k < m; ++k) base[k] = box_of(system, word, k).center();

    bool all_const = true;
    for (int k = 0; k < m; ++k) {
        CoordinateMonotonicity cm;
        cm.coordinate = k;
        cm.constant = true;
        const Interval& bx = box_of(system, word, k);
        const int kp = (k + 1) % m, kq = (k - 1 + m) % m;
        const Interval& bp = box_of(system, word, kp);
        const Interval& bq = box_of(system, word, kq);
        for (int a = 0; a < 3 && cm.constant; ++a) {
            for (int b = 0; b < 3 && cm.constant; ++b) {
                std::vector<double> xi = base;
                xi[kq] = bq.alpha + 0.5 * a * bq.width();
                xi[kp] = bp.alpha + 0.5 * b * bp.width();
                double prev = 0.0;
                int dir = 0;
                for (int i = 0; i <= 6; ++i) {
                    xi[k] = bx.alpha + bx.width() * i / 6.0;
                    double f;
                    try {
                        f = component_Fk(curve, params, xi, ChainMode::Periodic, k);
                    } catch (const ArcError&) {
                        cm.constant = false;
                        break;
                    }
                    if (i > 0) {
                        const int step_dir = (f > prev) ? 1 : -1;
                        if (dir == 0) dir = step_dir;
                        else if (dir != step_dir) {
                            cm.constant = false;
                            break;
                        }
                    }
                    prev = f;
                }
                if (cm.sign == 0) cm.sign = dir;
                else if (dir != 0 && dir != cm.sign) cm.constant = false;
            }
        }
        all_const = all_const && cm.constant;
        rep.coordinates.push_back(cm);
    }
    rep.unique = all_const;
    if (!rep.unique) rep.note = "sign violation: h too small for this box";
    return rep;
}

} // namespace refrabill
