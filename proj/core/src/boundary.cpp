#include "refrabill/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "refrabill/errors.hpp"
#include "refrabill/quadrature.hpp"
#include "refrabill/rootfind.hpp"

namespace refrabill {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kPanels = 1024;
constexpr double kAntipodalTol = 1.0e-9; // rad, conservative
constexpr double kDegenerateTol = 1.0e-8;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    return a;
}

// Overlap test for circular arcs [a1, b1] and [a2, b2] (widths < 2*pi),
// given as unwrapped angle intervals.
bool circular_overlap(double a1, double b1, double a2, double b2) {
    const double shift = kTwoPi * std::floor((a1 - a2) / kTwoPi);
    a2 += shift;
    b2 += shift; // now a2 in [a1 - 2pi, a1 + 2pi)... check three copies
    for (int k = -1; k <= 1; ++k) {
        const double lo = a2 + k * kTwoPi;
        const double hi = b2 + k * kTwoPi;
        if (lo <= b1 && hi >= a1) return true;
    }
    return false;
}

} // namespace

CurveSpec CurveSpec::ellipse(double a, double b) {
    CurveSpec s;
    s.family = Family::Ellipse;
    s.a = a;
    s.b = b;
    return s;
}

CurveSpec CurveSpec::polar_fourier(double c0, std::vector<double> cos_coef,
                                   std::vector<double> sin_coef) {
    CurveSpec s;
    s.family = Family::PolarFourier;
    s.c0 = c0;
    s.cos_coef = std::move(cos_coef);
    s.sin_coef = std::move(sin_coef);
    return s;
}

double CurveSpec::polar_radius(double theta) const {
    double r = c0;
    for (std::size_t k = 0; k < cos_coef.size(); ++k)
        r += cos_coef[k] * std::cos((k + 1) * theta);
    for (std::size_t k = 0; k < sin_coef.size(); ++k)
        r += sin_coef[k] * std::sin((k + 1) * theta);
    return r;
}

Vec2 CurveSpec::point(double theta) const {
    if (family == Family::Ellipse) return {a * std::cos(theta), b * std::sin(theta)};
    const double r = polar_radius(theta);
    return {r * std::cos(theta), r * std::sin(theta)};
}

Vec2 CurveSpec::d1(double theta) const {
    if (family == Family::Ellipse) return {-a * std::sin(theta), b * std::cos(theta)};
    double r = c0, r1 = 0.0;
    for (std::size_t k = 0; k < cos_coef.size(); ++k) {
        const double m = double(k + 1);
        r += cos_coef[k] * std::cos(m * theta);
        r1 += -cos_coef[k] * m * std::sin(m * theta);
    }
    for (std::size_t k = 0; k < sin_coef.size(); ++k) {
        const double m = double(k + 1);
        r += sin_coef[k] * std::sin(m * theta);
        r1 += sin_coef[k] * m * std::cos(m * theta);
    }
    const Vec2 er{std::cos(theta), std::sin(theta)};
    const Vec2 et{-std::sin(theta), std::cos(theta)};
    return r1 * er + r * et;
}

Vec2 CurveSpec::d2(double theta) const {
    if (family == Family::Ellipse) return {-a * std::cos(theta), -b * std::sin(theta)};
    double r = c0, r1 = 0.0, r2 = 0.0;
    for (std::size_t k = 0; k < cos_coef.size(); ++k) {
        const double m = double(k + 1);
        r += cos_coef[k] * std::cos(m * theta);
        r1 += -cos_coef[k] * m * std::sin(m * theta);
        r2 += -cos_coef[k] * m * m * std::cos(m * theta);
    }
    for (std::size_t k = 0; k < sin_coef.size(); ++k) {
        const double m = double(k + 1);
        r += sin_coef[k] * std::sin(m * theta);
        r1 += sin_coef[k] * m * std::cos(m * theta);
        r2 += -sin_coef[k] * m * m * std::sin(m * theta);
    }
    const Vec2 er{std::cos(theta), std::sin(theta)};
    const Vec2 et{-std::sin(theta), std::cos(theta)};
    return (r2 - r) * er + 2.0 * r1 * et;
}

BoundaryCurve::BoundaryCurve(const CurveSpec& spec) : spec_(spec) {
    validate();
    theta_nodes_.resize(kPanels + 1);
    s_cum_.resize(kPanels + 1);
    s_cum_[0] = 0.0;
    auto spd = [this](double t) { return speed(t); };
    for (int i = 0; i <= kPanels; ++i) theta_nodes_[i] = kTwoPi * i / kPanels;
    for (int i = 0; i < kPanels; ++i)
        s_cum_[i + 1] = s_cum_[i] + gauss16(spd, theta_nodes_[i], theta_nodes_[i + 1]);
    length_ = s_cum_[kPanels];

    // max radius: dense scan plus parabolic refinement around the best node
    const int n = 8192;
    double best = 0.0;
    int besti = 0;
    for (int i = 0; i < n; ++i) {
        const double r = spec_.point(kTwoPi * i / n).norm();
        if (r > best) { best = r; besti = i; }
    }
    const double h = kTwoPi / n;
    const double t0 = kTwoPi * besti / n;
    const double rm = spec_.point(t0 - h).norm(), rp = spec_.point(t0 + h).norm();
    const double denom = rm - 2.0 * best + rp;
    double refined = best;
    if (denom < 0.0) {
        const double dt = 0.5 * h * (rm - rp) / denom;
        refined = spec_.point(t0 + dt).norm();
    }
    max_radius_ = std::max(best, refined);
}

void BoundaryCurve::validate() const {
    if (spec_.family == CurveSpec::Family::Ellipse) {
        if (!(spec_.a > 0.0) || !(spec_.b > 0.0))
            throw SpecError("ellipse semi-axes must be positive");
        return;
    }
    // Polar radius must stay strictly positive; otherwise the trace jumps
    // through the origin and the spec is rejected as self-intersecting.
    const int n = 8192;
    for (int i = 0; i < n; ++i) {
        if (spec_.polar_radius(kTwoPi * i / n) <= 0.0)
            throw SpecError("polar spec has non-positive radius (origin not enclosed)");
    }
}

double BoundaryCurve::speed(double theta) const { return spec_.d1(theta).norm(); }

double BoundaryCurve::wrap(double xi) const {
    xi = std::fmod(xi, length_);
    if (xi < 0.0) xi += length_;
    return xi;
}

double BoundaryCurve::xi_of_theta(double theta) const {
    theta = wrap_angle(theta);
    const auto it = std::upper_bound(theta_nodes_.begin(), theta_nodes_.end(), theta);
    const int i = std::max(0, int(it - theta_nodes_.begin()) - 1);
    auto spd = [this](double t) { return speed(t); };
    return s_cum_[i] + gauss16(spd, theta_nodes_[i], theta);
}

double BoundaryCurve::theta_of_xi(double xi) const {
    xi = wrap(xi);
    const auto it = std::upper_bound(s_cum_.begin(), s_cum_.end(), xi);
    const int i = std::clamp(int(it - s_cum_.begin()) - 1, 0, kPanels - 1);
    const double ta = theta_nodes_[i], tb = theta_nodes_[i + 1];
    auto spd = [this](double t) { return speed(t); };
    auto g = [&](double t) { return s_cum_[i] + gauss16(spd, ta, t) - xi; };
    const double frac = (xi - s_cum_[i]) / (s_cum_[i + 1] - s_cum_[i]);
    return newton_bracketed(g, spd, ta, tb, ta + frac * (tb - ta), 1.0e-14);
}

Vec2 BoundaryCurve::point(double xi) const { return spec_.point(theta_of_xi(xi)); }

Frame BoundaryCurve::frame(double xi) const {
    const double th = theta_of_xi(xi);
    const Vec2 p = spec_.point(th);
    const Vec2 t = spec_.d1(th).normalized();
    return {p, t, t.rot_cw()};
}

double BoundaryCurve::curvature(double xi) const {
    const double th = theta_of_xi(xi);
    const Vec2 g1 = spec_.d1(th), g2 = spec_.d2(th);
    const double sp = g1.norm();
    return g1.cross(g2) / (sp * sp * sp);
}

double BoundaryCurve::radius(double xi) const { return point(xi).norm(); }

double BoundaryCurve::radius_d1(double xi) const {
    const double th = theta_of_xi(xi);
    const Vec2 p = spec_.point(th);
    const Vec2 t = spec_.d1(th).normalized();
    return p.dot(t) / p.norm();
}

double BoundaryCurve::radius_d2(double xi) const {
    const double th = theta_of_xi(xi);
    const Vec2 p = spec_.point(th);
    const Vec2 g1 = spec_.d1(th), g2 = spec_.d2(th);
    const double sp2 = g1.norm2();
    // second derivative of position with respect to arc length
    const Vec2 acc = g2 / sp2 - g1 * (g1.dot(g2) / (sp2 * sp2));
    const double r = p.norm();
    const double pdot = p.dot(g1) / std::sqrt(sp2);
    return (1.0 + p.dot(acc)) / r - (pdot * pdot) / (r * r * r);
}

double BoundaryCurve::boundary_radius(double polar_angle) const {
    if (spec_.family == CurveSpec::Family::Ellipse) {
        const double c = std::cos(polar_angle), s = std::sin(polar_angle);
        return spec_.a * spec_.b / std::hypot(spec_.b * c, spec_.a * s);
    }
    return spec_.polar_radius(polar_angle);
}

double BoundaryCurve::radial_gap(const Vec2& p) const {
    return p.norm() - boundary_radius(p.angle());
}

double BoundaryCurve::xi_of_polar_angle(double polar_angle) const {
    double theta = polar_angle;
    if (spec_.family == CurveSpec::Family::Ellipse)
        theta = std::atan2(spec_.a * std::sin(polar_angle), spec_.b * std::cos(polar_angle));
    return xi_of_theta(theta);
}

BoundaryCurve build_boundary(const CurveSpec& spec) { return BoundaryCurve(spec); }

Frame frame(const BoundaryCurve& curve, double xi) { return curve.frame(xi); }

RayCrossings count_ray_crossings(const std::function<Vec2(double)>& curve_point,
                                 double param_hi, const Vec2& dir, int n_scan,
                                 double tangency_tol) {
    const Vec2 d = dir.normalized();
    auto f = [&](double t) { return d.cross(curve_point(t)); };
    RayCrossings out;
    const double h = param_hi / n_scan;
    double scale = 0.0;
    std::vector<double> vals(n_scan);
    for (int i = 0; i < n_scan; ++i) {
        vals[i] = f(h * i);
        scale = std::max(scale, std::abs(vals[i]));
    }
    const double tol = tangency_tol * std::max(scale, 1.0e-300);

    std::vector<double> hits; // parameters where the curve meets the ray line
    for (int i = 0; i < n_scan; ++i) {
        const int j = (i + 1) % n_scan;
        const double fa = vals[i], fb = vals[j];
        if (fa == 0.0) {
            hits.push_back(h * i);
        } else if (fb != 0.0 && (fa < 0.0) != (fb < 0.0)) {
            hits.push_back(bisect(f, h * i, h * (i + 1), fa, fb, 1.0e-13 * param_hi));
        }
    }
    // tangential contact: a local extremum of f touching zero without a sign
    // change, located by parabolic interpolation through sample triples
    for (int i = 0; i < n_scan; ++i) {
        const double fm = vals[(i - 1 + n_scan) % n_scan];
        const double f0 = vals[i];
        const double fp = vals[(i + 1) % n_scan];
        if ((fm < 0.0) != (f0 < 0.0) || (f0 < 0.0) != (fp < 0.0)) continue;
        if (std::abs(f0) > std::min(std::abs(fm), std::abs(fp))) continue;
        const double curv = fm - 2.0 * f0 + fp;
        double fmin = f0;
        if (curv != 0.0) fmin = f0 - (fp - fm) * (fp - fm) / (8.0 * curv);
        if (std::abs(fmin) < tol && d.dot(curve_point(h * i)) > 0.0) out.tangency = true;
    }
    // collapse duplicates, including the wrap at param_hi
    const double dedupe = 1.0e-9 * param_hi;
    std::sort(hits.begin(), hits.end());
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (i > 0 && hits[i] - hits[i - 1] < dedupe) continue;
        if (i + 1 == hits.size() && hits.size() > 1 &&
            (param_hi - hits[i]) + hits.front() < dedupe)
            continue;
        if (d.dot(curve_point(hits[i])) > 0.0) ++out.count;
    }
    return out;
}

RayCrossings lsc_detail(const BoundaryCurve& curve, double xi) {
    const Vec2 p = curve.point(xi);
    const CurveSpec& spec = curve.spec();
    return count_ray_crossings([&](double th) { return spec.point(th); }, kTwoPi, p);
}

bool is_lsc(const BoundaryCurve& curve, double xi) {
    const RayCrossings rc = lsc_detail(curve, xi);
    return rc.count == 1 && !rc.tangency;
}

bool are_antipodal(const BoundaryCurve& curve, double xi1, double xi2) {
    const Vec2 p = curve.point(xi1);
    const Vec2 q = curve.point(xi2);
    return std::abs(angle_between(p, -q)) <= kAntipodalTol;
}

namespace {

// Unwrapped polar-angle sweep of gamma over a parameter interval. Star-shaped
// curves have strictly monotone polar angle, but sampling keeps this honest.
std::pair<double, double> angle_sweep(const BoundaryCurve& curve, double lo, double hi) {
    const int n = 64;
    double prev = curve.point(lo).angle();
    double acc = prev, amin = prev, amax = prev;
    for (int i = 1; i <= n; ++i) {
        const double a = curve.point(lo + (hi - lo) * i / n).angle();
        double delta = a - prev;
        while (delta > std::numbers::pi) delta -= kTwoPi;
        while (delta < -std::numbers::pi) delta += kTwoPi;
        acc += delta;
        prev = a;
        amin = std::min(amin, acc);
        amax = std::max(amax, acc);
    }
    return {amin, amax};
}

} // namespace

bool intervals_not_antipodal(const BoundaryCurve& curve, double lo1, double hi1,
                             double lo2, double hi2) {
    auto [a1, b1] = angle_sweep(curve, lo1, hi1);
    auto [a2, b2] = angle_sweep(curve, lo2, hi2);
    // Non-antipodality is an open condition; pad by the antipodality tolerance.
    a1 -= kAntipodalTol; b1 += kAntipodalTol;
    return !circular_overlap(a1, b1, a2 + std::numbers::pi, b2 + std::numbers::pi);
}

std::vector<CentralConfiguration> find_central_configurations(const BoundaryCurve& curve) {
    const double L = curve.total_length();
    auto f = [&](double xi) { return curve.radius_d1(xi); };

    const int n = 4096;
    double fmax = 0.0;
    for (int i = 0; i < n; ++i) fmax = std::max(fmax, std::abs(f(L * i / n)));
    if (fmax < 1.0e-12) {
        // constant radius: the whole curve is a degenerate critical plateau
        CentralConfiguration cc;
        cc.xi_bar = 0.0;
        cc.kind = CentralConfiguration::Kind::Degenerate;
        cc.second_derivative = 0.0;
        cc.lsc_ok = is_lsc(curve, 0.0);
        cc.plateau = true;
        cc.plateau_lo = 0.0;
        cc.plateau_hi = L;
        return {cc};
    }

    std::vector<double> roots = scan_roots(f, 0.0, L, n, 1.0e-13 * L);
    // drop the duplicate of a root at 0 reappearing at L
    while (roots.size() > 1 && curve.wrap(roots.back() - roots.front()) < 1.0e-9 * L)
        roots.pop_back();

    std::vector<CentralConfiguration> out;
    for (double xi : roots) {
        CentralConfiguration cc;
        cc.xi_bar = curve.wrap(xi);
        cc.second_derivative = curve.radius_d2(cc.xi_bar);
        if (std::abs(cc.second_derivative) < kDegenerateTol)
            cc.kind = CentralConfiguration::Kind::Degenerate;
        else if (cc.second_derivative > 0.0)
            cc.kind = CentralConfiguration::Kind::StrictMin;
        else
            cc.kind = CentralConfiguration::Kind::StrictMax;
        cc.lsc_ok = is_lsc(curve, cc.xi_bar);
        out.push_back(cc);
    }
    std::sort(out.begin(), out.end(),
              [](const CentralConfiguration& u, const CentralConfiguration& v) {
                  return u.xi_bar < v.xi_bar;
              });
    return out;
}

} // namespace refrabill
