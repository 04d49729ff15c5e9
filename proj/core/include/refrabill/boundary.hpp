#ifndef REFRABILL_BOUNDARY_HPP
#define REFRABILL_BOUNDARY_HPP

#include <functional>
#include <string>
#include <vector>

#include "refrabill/vec2.hpp"

namespace refrabill {

/// Analytic family of closed star-shaped boundary curves. Restricting to
/// analytic specs keeps first and second radius derivatives exact instead
/// of interpolated.
struct CurveSpec {
    enum class Family { Ellipse, PolarFourier };

    Family family = Family::Ellipse;
    double a = 1.0; ///< ellipse semi-axis along x
    double b = 1.0; ///< ellipse semi-axis along y
    double c0 = 1.0;
    std::vector<double> cos_coef; ///< polar harmonics, entry k-1 multiplies cos(k theta)
    std::vector<double> sin_coef; ///< entry k-1 multiplies sin(k theta)

    static CurveSpec ellipse(double a, double b);
    static CurveSpec polar_fourier(double c0, std::vector<double> cos_coef,
                                   std::vector<double> sin_coef = {});

    Vec2 point(double theta) const;
    Vec2 d1(double theta) const;
    Vec2 d2(double theta) const;
    double polar_radius(double theta) const; ///< PolarFourier only
};

struct Frame {
    Vec2 point;
    Vec2 tangent; ///< unit tangent, CCW traversal
    Vec2 normal;  ///< outward unit normal
};

struct CentralConfiguration {
    enum class Kind { StrictMin, StrictMax, Degenerate };
    double xi_bar = 0.0;
    Kind kind = Kind::Degenerate;
    double second_derivative = 0.0; ///< d^2/dxi^2 ||gamma|| at xi_bar
    bool lsc_ok = false;
    bool plateau = false; ///< radius derivative vanishes on a whole interval
    double plateau_lo = 0.0;
    double plateau_hi = 0.0;
};

/// Arc-length parametrized closed curve around the origin.
/// Immutable after construction; safe for concurrent reads.
class BoundaryCurve {
public:
    explicit BoundaryCurve(const CurveSpec& spec);

    const CurveSpec& spec() const { return spec_; }
    double total_length() const { return length_; }
    double max_radius() const { return max_radius_; }

    double wrap(double xi) const;

    Vec2 point(double xi) const;
    Frame frame(double xi) const;
    double curvature(double xi) const;

    double radius(double xi) const;    ///< ||gamma(xi)||
    double radius_d1(double xi) const; ///< d/dxi ||gamma||
    double radius_d2(double xi) const;

    /// Boundary radius at a given polar angle (curves here are radial graphs).
    double boundary_radius(double polar_angle) const;
    /// Signed radial distance of p from the boundary: positive outside D.
    double radial_gap(const Vec2& p) const;
    bool is_outside(const Vec2& p, double tol = 0.0) const { return radial_gap(p) > tol; }
    bool is_inside(const Vec2& p, double tol = 0.0) const { return radial_gap(p) < -tol; }

    /// Arc-length parameter of the boundary point at a given polar angle.
    double xi_of_polar_angle(double polar_angle) const;

    double theta_of_xi(double xi) const; ///< native parameter
    double xi_of_theta(double theta) const;

private:
    CurveSpec spec_;
    double length_ = 0.0;
    double max_radius_ = 0.0;
    std::vector<double> theta_nodes_; ///< panel edges in native parameter
    std::vector<double> s_cum_;       ///< cumulative arc length at panel edges

    double speed(double theta) const;
    void validate() const;
};

BoundaryCurve build_boundary(const CurveSpec& spec);

Frame frame(const BoundaryCurve& curve, double xi);

/// Crossing count of a parametric closed curve with the ray {lambda*dir, lambda >= 0}.
struct RayCrossings {
    int count = 0;
    bool tangency = false;
};
RayCrossings count_ray_crossings(const std::function<Vec2(double)>& curve_point,
                                 double param_hi, const Vec2& dir, int n_scan = 4096,
                                 double tangency_tol = 1.0e-9);

/// Local star-convexity: the ray through gamma(xi) meets the boundary only there.
/// Tangential intersections within tolerance count as failures.
bool is_lsc(const BoundaryCurve& curve, double xi);
RayCrossings lsc_detail(const BoundaryCurve& curve, double xi);

/// True when the origin lies on the segment [gamma(xi1), gamma(xi2)].
/// Anti-parallelism within 1e-9 rad is treated as antipodal.
bool are_antipodal(const BoundaryCurve& curve, double xi1, double xi2);

/// True when no point of the first parameter interval is antipodal to a point
/// of the second. Computed from polar-angle sweeps with wraparound.
bool intervals_not_antipodal(const BoundaryCurve& curve, double lo1, double hi1,
                             double lo2, double hi2);

/// All critical points of xi -> ||gamma(xi)||, classified by the exact second
/// derivative and checked for local star-convexity, sorted by xi. A constant
/// radius produces a single degenerate plateau entry spanning [0, L].
std::vector<CentralConfiguration> find_central_configurations(const BoundaryCurve& curve);

} // namespace refrabill

#endif
