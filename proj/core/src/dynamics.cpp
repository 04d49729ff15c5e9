#include "refrabill/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "refrabill/errors.hpp"
#include "refrabill/rootfind.hpp"

namespace refrabill {

namespace {

constexpr double kGrazeTol = 1.0e-10;

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

struct CrossingOut {
    bool found = false;
    bool grazing = false;
    double s = 0.0;
};

// First exit of g through zero with the given target sign, marching with a
// fixed step and bisecting the bracketing panel. g(0) = 0 at the departing
// boundary point, so the march first waits for g to take the departing sign.
template <typename G>
CrossingOut first_crossing(G&& g, double step, double s_max, int depart_sign) {
    CrossingOut out;
    double prev_s = 0.0;
    double prev_g = 0.0;
    bool departed = false;
    for (double s = step; s <= s_max * (1.0 + 1.0e-12); s += step) {
        const double gs = g(s);
        if (!departed) {
            if (depart_sign * gs > 0.0) {
                departed = true;
            } else if (depart_sign * gs < 0.0) {
                // crossed back within the very first panels: shrink to bracket
                double lo = prev_s, hi = s;
                double glo = prev_g;
                while (depart_sign * glo <= 0.0 && hi - lo > 1.0e-15 * s_max) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = g(mid);
                    if (depart_sign * gm > 0.0) {
                        lo = mid;
                        glo = gm;
                        break;
                    }
                    hi = mid;
                }
                if (depart_sign * glo <= 0.0) return out; // tangential, no departure
                out.found = true;
                out.s = bisect(g, lo, hi, glo, g(hi), 1.0e-13 * s_max);
                return out;
            }
        } else if (depart_sign * gs < 0.0) {
            out.found = true;
            out.s = bisect(g, prev_s, s, prev_g, gs, 1.0e-13 * s_max);
            return out;
        }
        prev_s = s;
        prev_g = gs;
    }
    return out;
}

} // namespace

std::string to_string(StepStatus s) {
    switch (s) {
        case StepStatus::Ok: return "ok";
        case StepStatus::NotInWindow: return "not-in-window";
        case StepStatus::Escape: return "escape";
        case StepStatus::WrongWindow: return "wrong-window";
        case StepStatus::CriticalAngleTrap: return "critical-angle-trap";
        case StepStatus::TangentialGrazing: return "tangential-grazing";
    }
    return "unknown";
}

int interval_index(const IntervalSystem& system, const BoundaryCurve& curve, double xi) {
    const double L = curve.total_length();
    const double w = curve.wrap(xi);
    for (int i = 0; i < system.size(); ++i) {
        const Interval& iv = system.intervals[i];
        if (iv.contains(w) || iv.contains(w - L) || iv.contains(w + L)) return i;
    }
    return -1;
}

SurfaceState make_outward_state(const BoundaryCurve& curve, const BilliardParams& params,
                                double xi, double tangential) {
    const Frame f = curve.frame(xi);
    const double ve2 = 2.0 * v_outer(params, f.point);
    if (tangential * tangential > ve2)
        throw PreconditionError("tangential component exceeds the outer shell speed");
    const double b = std::sqrt(ve2 - tangential * tangential);
    return {curve.wrap(xi), f.tangent * tangential + f.normal * b, Orientation::Outward};
}

Vec2 refract(const BilliardParams& params, const BoundaryCurve& curve, const Vec2& v,
             double xi, RefractDirection direction) {
    const Frame f = curve.frame(xi);
    const double a = v.dot(f.tangent);
    const double b = v.dot(f.normal);
    const double ve = v_outer(params, f.point);
    const double vi = v_inner(params, f.point);
    const double shell = (direction == RefractDirection::OutwardToInner) ? ve : vi;
    if (std::abs(0.5 * v.norm2() - shell) > 1.0e-9 * std::max(1.0, shell))
        throw ArcError(ArcError::Kind::EnergyMismatch, "refract: velocity off its shell");
    if (direction == RefractDirection::OutwardToInner)
        return f.tangent * a + f.normal * (sgn(b) * std::sqrt(2.0 * vi - a * a));
    if (a * a > 2.0 * ve)
        throw TotalInternalReflection("inner incidence beyond the critical angle");
    return f.tangent * a + f.normal * (sgn(b) * std::sqrt(2.0 * ve - a * a));
}

namespace {

// Shared transit walker. Runs an outer leg from an outward state, refracts,
// runs the inner leg, refracts back. Window checks against `r_outer` (outer
// re-entry interval must match) and membership of the exit in NA(r_outer).
struct TransitLegs {
    StepStatus status = StepStatus::Ok;
    double s_outer = 0.0, s_inner = 0.0;
    double xi1 = 0.0, xi2 = 0.0;
    Vec2 v1, v1p, v2i, v2;
    bool collision = false;
    int r1 = -1, r2 = -1;
};

TransitLegs run_transit(const BoundaryCurve& curve, const BilliardParams& params,
                        const IntervalSystem& system, double xi0, const Vec2& v0,
                        bool permissive) {
    TransitLegs t;
    const Vec2 z0 = curve.point(xi0);
    const Frame f0 = curve.frame(xi0);
    if (std::abs(v0.dot(f0.normal)) < kGrazeTol * v0.norm()) {
        t.status = StepStatus::TangentialGrazing;
        return t;
    }

    // outer leg: the harmonic flow is periodic, so the re-entry (if any)
    // happens within one full period
    const HarmonicFlow outer{z0, v0, params.omega()};
    const double period = 2.0 * std::numbers::pi / params.omega();
    auto gap_outer = [&](double s) { return curve.radial_gap(outer.position(s)); };
    const CrossingOut cr1 = first_crossing(gap_outer, 0.01 * period, period, +1);
    if (!cr1.found) {
        t.status = StepStatus::Escape;
        return t;
    }
    t.s_outer = cr1.s;
    const Vec2 z1 = outer.position(cr1.s);
    t.xi1 = curve.xi_of_polar_angle(z1.angle());
    t.v1 = outer.velocity(cr1.s);
    const Frame f1 = curve.frame(t.xi1);
    if (std::abs(t.v1.dot(f1.normal)) < kGrazeTol * t.v1.norm()) {
        t.status = StepStatus::TangentialGrazing;
        return t;
    }
    t.r1 = interval_index(system, curve, t.xi1);

    // refract into the inner region
    t.v1p = refract(params, curve, t.v1, t.xi1, RefractDirection::OutwardToInner);

    // inner leg in the Levi-Civita chart
    const KeplerFlow inner = propagate_inner(params, f1.point, t.v1p);
    auto gap_inner = [&](double tau) { return curve.radial_gap(inner.position_tau(tau)); };
    const CrossingOut cr2 = first_crossing(gap_inner, 0.02, 80.0, -1);
    if (!cr2.found) {
        t.status = StepStatus::Escape;
        return t;
    }
    const double tau_exit = cr2.s;
    t.s_inner = inner.time_of_tau(tau_exit);
    const Vec2 z2 = inner.position_tau(tau_exit);
    t.xi2 = curve.xi_of_polar_angle(z2.angle());
    t.v2i = inner.velocity_tau(tau_exit);
    const Frame f2 = curve.frame(t.xi2);
    if (std::abs(t.v2i.dot(f2.normal)) < kGrazeTol * t.v2i.norm()) {
        t.status = StepStatus::TangentialGrazing;
        return t;
    }
    t.r2 = interval_index(system, curve, t.xi2);

    // collision passage: the LC radius minimum within the leg
    {
        const double a = std::abs(inner.A), b = std::abs(inner.B);
        if (a > 0.0 && b > 0.0) {
            const double tau_star = 0.25 * std::log((b * b) / (a * a));
            if (tau_star > 0.0 && tau_star < tau_exit)
                t.collision = std::abs(inner.w(tau_star)) <
                              1.0e-12 * std::sqrt(curve.max_radius());
        }
    }

    // transmission cone at the exit
    const double a_exit = t.v2i.dot(f2.tangent);
    if (a_exit * a_exit > 2.0 * v_outer(params, f2.point)) {
        t.status = StepStatus::CriticalAngleTrap;
        return t;
    }
    t.v2 = refract(params, curve, t.v2i, t.xi2, RefractDirection::InnerToOutward);

    // strict window semantics: re-entry in the starting interval, exit in a
    // non-antipodal one
    if (!permissive) {
        const int r0 = interval_index(system, curve, xi0);
        if (t.r1 < 0 || t.r1 != r0 || t.r2 < 0 ||
            (r0 >= 0 && !system.na_contains(r0, t.r2))) {
            t.status = StepStatus::WrongWindow;
            return t;
        }
    }
    return t;
}

} // namespace

StepResult return_map(const BoundaryCurve& curve, const BilliardParams& params,
                      const IntervalSystem& system, const SurfaceState& state,
                      bool permissive) {
    StepResult res;
    res.record.entry = state;
    res.record.interval_from = interval_index(system, curve, state.xi);
    if (res.record.interval_from < 0 && !permissive) {
        res.status = res.record.status = StepStatus::NotInWindow;
        return res;
    }
    const double shell = v_outer(params, curve.point(state.xi));
    if (std::abs(0.5 * state.v.norm2() - shell) > 1.0e-9 * std::max(1.0, shell))
        throw ArcError(ArcError::Kind::EnergyMismatch, "return_map: state off the shell");

    const TransitLegs t = run_transit(curve, params, system, state.xi, state.v, permissive);
    res.record.s_outer = t.s_outer;
    res.record.s_inner = t.s_inner;
    res.record.xi1 = t.xi1;
    res.record.v1 = t.v1;
    res.record.v1_refracted = t.v1p;
    res.record.v2_inner = t.v2i;
    res.record.collision = t.collision;
    res.record.interval_to = t.r2;
    res.status = res.record.status = t.status;
    if (t.status != StepStatus::Ok) return res;

    res.next = {curve.wrap(t.xi2), t.v2, Orientation::Outward};
    res.record.exit = res.next;
    return res;
}

StepResult return_map_inverse(const BoundaryCurve& curve, const BilliardParams& params,
                              const IntervalSystem& system, const SurfaceState& state,
                              bool permissive) {
    StepResult res;
    res.record.exit = state;
    const int r2 = interval_index(system, curve, state.xi);
    res.record.interval_to = r2;
    if (r2 < 0 && !permissive) {
        res.status = res.record.status = StepStatus::NotInWindow;
        return res;
    }
    const double shell = v_outer(params, curve.point(state.xi));
    if (std::abs(0.5 * state.v.norm2() - shell) > 1.0e-9 * std::max(1.0, shell))
        throw ArcError(ArcError::Kind::EnergyMismatch, "return_map_inverse: state off the shell");

    // reversed transit runs inner leg first: reuse the walker by reversing
    // the velocity, stepping, and reversing the result
    const Vec2 v_in = -state.v;
    const Frame f2 = curve.frame(state.xi);
    if (std::abs(v_in.dot(f2.normal)) < kGrazeTol * v_in.norm()) {
        res.status = res.record.status = StepStatus::TangentialGrazing;
        return res;
    }
    const Vec2 v2p_rev = refract(params, curve, v_in, state.xi, RefractDirection::OutwardToInner);
    const KeplerFlow inner = propagate_inner(params, curve.point(state.xi), v2p_rev);
    auto gap_inner = [&](double tau) { return curve.radial_gap(inner.position_tau(tau)); };
    const CrossingOut cr = first_crossing(gap_inner, 0.02, 80.0, -1);
    if (!cr.found) {
        res.status = res.record.status = StepStatus::Escape;
        return res;
    }
    const double tau1 = cr.s;
    const Vec2 z1 = inner.position_tau(tau1);
    const double xi1 = curve.xi_of_polar_angle(z1.angle());
    const Vec2 u1 = inner.velocity_tau(tau1); // outward, inner shell (reversed time)
    const Frame f1 = curve.frame(xi1);
    if (std::abs(u1.dot(f1.normal)) < kGrazeTol * u1.norm()) {
        res.status = res.record.status = StepStatus::TangentialGrazing;
        return res;
    }
    const double a1 = u1.dot(f1.tangent);
    if (a1 * a1 > 2.0 * v_outer(params, curve.point(xi1))) {
        res.status = res.record.status = StepStatus::CriticalAngleTrap;
        return res;
    }
    const Vec2 u1e = refract(params, curve, u1, xi1, RefractDirection::InnerToOutward);

    const HarmonicFlow outer{curve.point(xi1), u1e, params.omega()};
    const double period = 2.0 * std::numbers::pi / params.omega();
    auto gap_outer = [&](double s) { return curve.radial_gap(outer.position(s)); };
    const CrossingOut cr0 = first_crossing(gap_outer, 0.01 * period, period, +1);
    if (!cr0.found) {
        res.status = res.record.status = StepStatus::Escape;
        return res;
    }
    const Vec2 z0 = outer.position(cr0.s);
    const double xi0 = curve.xi_of_polar_angle(z0.angle());
    const Vec2 w0 = outer.velocity(cr0.s); // inward at the earlier crossing

    const int r1 = interval_index(system, curve, xi1);
    const int r0 = interval_index(system, curve, xi0);
    if (!permissive && (r1 < 0 || r0 != r1 || (r2 >= 0 && !system.na_contains(r2, r1)))) {
        res.status = res.record.status = StepStatus::WrongWindow;
        return res;
    }

    // forward-sense bookkeeping of the reconstructed transit
    res.record.interval_from = r1;
    res.record.s_outer = cr0.s;
    res.record.s_inner = inner.time_of_tau(tau1);
    res.record.xi1 = xi1;
    res.record.v1 = -u1e;
    res.record.v1_refracted = -u1;
    res.record.v2_inner = -v2p_rev;
    {
        const double a = std::abs(inner.A), b = std::abs(inner.B);
        if (a > 0.0 && b > 0.0) {
            const double tau_star = 0.25 * std::log((b * b) / (a * a));
            if (tau_star > 0.0 && tau_star < tau1)
                res.record.collision =
                    std::abs(inner.w(tau_star)) < 1.0e-12 * std::sqrt(curve.max_radius());
        }
    }
    res.next = {curve.wrap(xi0), -w0, Orientation::Outward};
    res.record.entry = res.next;
    res.status = res.record.status = StepStatus::Ok;
    return res;
}

namespace {

void sample_transit(const BoundaryCurve& curve, const BilliardParams& params,
                    const TransitRecord& rec, double s_base, int per_arc,
                    std::vector<TraceSample>& out) {
    const HarmonicFlow outer{curve.point(rec.entry.xi), rec.entry.v, params.omega()};
    for (int k = 0; k < per_arc; ++k) {
        const double s = rec.s_outer * k / per_arc;
        out.push_back({s_base + s, outer.position(s), outer.velocity(s), 'O',
                       k == 0 ? rec.interval_from : -1});
    }
    const KeplerFlow inner =
        propagate_inner(params, curve.point(rec.xi1), rec.v1_refracted);
    for (int k = 0; k < per_arc; ++k) {
        const double s = rec.s_inner * k / per_arc;
        out.push_back({s_base + rec.s_outer + s, inner.position(s), inner.velocity(s), 'I',
                       k == 0 ? rec.interval_from : -1});
    }
}

} // namespace

TraceResult trace(const BoundaryCurve& curve, const BilliardParams& params,
                  const IntervalSystem& system, const SurfaceState& state, int n_forward,
                  int n_backward, bool permissive, int samples_per_arc) {
    TraceResult tr;

    // backward chain of states
    std::vector<SurfaceState> past;
    SurfaceState cur = state;
    for (int k = 0; k < n_backward; ++k) {
        const StepResult st = return_map_inverse(curve, params, system, cur, permissive);
        tr.backward_records.push_back(st.record);
        if (!st.ok()) {
            tr.backward_stop = st.status;
            break;
        }
        past.push_back(st.next);
        cur = st.next;
        ++tr.steps_backward;
    }

    // symbols, backmost first
    std::vector<int> symbols;
    for (auto it = past.rbegin(); it != past.rend(); ++it)
        symbols.push_back(interval_index(system, curve, it->xi));
    symbols.push_back(interval_index(system, curve, state.xi));

    // forward chain
    std::vector<TransitRecord> fwd;
    cur = state;
    for (int k = 0; k < n_forward; ++k) {
        const StepResult st = return_map(curve, params, system, cur, permissive);
        tr.forward_records.push_back(st.record);
        if (!st.ok()) {
            tr.forward_stop = st.status;
            break;
        }
        fwd.push_back(st.record);
        symbols.push_back(interval_index(system, curve, st.next.xi));
        cur = st.next;
        ++tr.steps_forward;
    }

    tr.window.symbols = symbols;
    tr.window.center = tr.steps_backward;
    tr.window.periodic = false;

    // samples: backward transits resampled in forward order, then forward ones
    double s_base = 0.0;
    std::vector<TransitRecord> ordered;
    for (int k = tr.steps_backward - 1; k >= 0; --k)
        ordered.push_back(tr.backward_records[k]);
    for (const auto& r : fwd) ordered.push_back(r);
    double total_back = 0.0;
    for (int k = 0; k < tr.steps_backward; ++k)
        total_back += tr.backward_records[k].s_outer + tr.backward_records[k].s_inner;
    s_base = -total_back;
    for (const auto& rec : ordered) {
        sample_transit(curve, params, rec, s_base, samples_per_arc, tr.samples);
        s_base += rec.s_outer + rec.s_inner;
    }
    // terminal boundary sample
    if (!ordered.empty()) {
        const TransitRecord& last = ordered.back();
        tr.samples.push_back({s_base, curve.point(last.exit.xi), last.exit.v, 'O',
                              last.interval_to});
    }
    return tr;
}

} // namespace refrabill
