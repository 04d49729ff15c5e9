#ifndef REFRABILL_PARAMS_HPP
#define REFRABILL_PARAMS_HPP

#include <cmath>

#include "refrabill/boundary.hpp"
#include "refrabill/errors.hpp"
#include "refrabill/vec2.hpp"

namespace refrabill {

/// Physical constants of the two-potential field. The outer region carries a
/// harmonic potential at energy calE, the inner region a Kepler potential
/// lifted by the energy jump h. Immutable value type, freely shareable.
struct BilliardParams {
    double omega2 = 1.0; ///< harmonic stiffness, 1/time^2
    double mu = 1.0;     ///< gravitational parameter, length^3/time^2
    double calE = 2.0;   ///< outer energy
    double h = 10.0;     ///< inner energy jump

    BilliardParams() = default;
    BilliardParams(double omega2_, double mu_, double calE_, double h_)
        : omega2(omega2_), mu(mu_), calE(calE_), h(h_) {
        if (!(omega2 > 0.0) || !(mu > 0.0) || !(calE > 0.0) || !(h > 0.0))
            throw SpecError("billiard parameters must all be strictly positive");
    }

    double omega() const { return std::sqrt(omega2); }
    double hill_radius() const { return std::sqrt(2.0 * calE) / omega(); }
    double inner_energy() const { return calE + h; }

    BilliardParams with_h(double new_h) const { return {omega2, mu, calE, new_h}; }
};

inline double v_outer(const BilliardParams& p, const Vec2& z) {
    return p.calE - 0.5 * p.omega2 * z.norm2();
}

inline double v_inner(const BilliardParams& p, const Vec2& z) {
    const double r = z.norm();
    if (r < 1.0e-14)
        throw ArcError(ArcError::Kind::CollisionSingularity, "v_inner at the collision");
    return p.calE + p.h + p.mu / r;
}

/// Largest inner incidence angle that still transmits to the outer region.
inline double alpha_crit(const BilliardParams& p, const BoundaryCurve& curve, double xi) {
    const Vec2 z = curve.point(xi);
    return std::asin(std::sqrt(v_outer(p, z) / v_inner(p, z)));
}

/// The boundary must sit strictly inside the Hill disk of the outer potential.
inline void check_pairing(const BilliardParams& p, const BoundaryCurve& curve) {
    if (!(p.hill_radius() > curve.max_radius()))
        throw SpecError("boundary curve is not strictly inside the Hill disk");
}

} // namespace refrabill

#endif
