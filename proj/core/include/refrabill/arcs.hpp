#ifndef REFRABILL_ARCS_HPP
#define REFRABILL_ARCS_HPP

#include <complex>

#include "refrabill/boundary.hpp"
#include "refrabill/params.hpp"
#include "refrabill/vec2.hpp"

namespace refrabill {

/// Analytic flow of the outer harmonic problem on the zero-energy shell.
struct HarmonicFlow {
    Vec2 z0, v0;
    double omega = 1.0;

    Vec2 position(double s) const {
        return z0 * std::cos(omega * s) + v0 * (std::sin(omega * s) / omega);
    }
    Vec2 velocity(double s) const {
        return v0 * std::cos(omega * s) - z0 * (omega * std::sin(omega * s));
    }
};

/// Levi-Civita propagated Kepler flow at inner energy E = calE + h.
/// The squared plane coordinate w evolves as a linear repulsor,
/// w(tau) = A e^tau + B e^-tau, and stays regular through collisions:
/// a radial infall is reflected back along the same direction.
struct KeplerFlow {
    std::complex<double> A, B;
    double E = 1.0;
    double mu = 1.0;

    std::complex<double> w(double tau) const {
        return A * std::exp(tau) + B * std::exp(-tau);
    }
    std::complex<double> wdot(double tau) const {
        return A * std::exp(tau) - B * std::exp(-tau);
    }

    /// Physical time elapsed from tau = 0 (monotone in tau).
    double time_of_tau(double tau) const;
    double tau_of_time(double s) const;

    Vec2 position_tau(double tau) const { return from_complex(w(tau) * w(tau)); }
    Vec2 velocity_tau(double tau) const {
        const std::complex<double> wt = w(tau);
        return from_complex(std::sqrt(2.0 * E) * wt * wdot(tau) / std::norm(wt));
    }
    Vec2 position(double s) const { return position_tau(tau_of_time(s)); }
    Vec2 velocity(double s) const { return velocity_tau(tau_of_time(s)); }
};

/// One harmonic segment exterior to the domain, with both endpoints on the
/// boundary. Zero-energy shell: |v|^2/2 + omega^2 |z|^2 / 2 = calE throughout.
struct OuterArc {
    Vec2 z0, z1; ///< endpoints on the boundary
    Vec2 v0, v1; ///< endpoint velocities
    double duration = 0.0;
    HarmonicFlow flow;
    bool homothetic = false; ///< radial out-and-back segment

    Vec2 position(double s) const { return flow.position(s); }
    Vec2 velocity(double s) const { return flow.velocity(s); }
};

enum class HomotopyClass { TnT, Direct };

/// One Kepler hyperbola segment at energy calE + h joining two boundary
/// points, solved in closed form in the Levi-Civita plane.
struct InnerArc {
    Vec2 p0, p1;
    Vec2 v0, v1;
    double duration = 0.0;

    std::complex<double> w0, w1; ///< LC endpoint coordinates, w^2 = p
    double Eprime = 0.0;         ///< repulsor energy mu / (2 (calE + h))
    double Ttilde = 0.0;         ///< regularized duration
    KeplerFlow flow;             ///< carries the LC coefficients A, B
    bool collision = false;
    HomotopyClass homotopy = HomotopyClass::TnT;

    Vec2 position(double s) const { return flow.position(s); }
    Vec2 velocity(double s) const { return flow.velocity(s); }
    Vec2 position_tau(double tau) const { return flow.position_tau(tau); }

    /// Smallest LC radius along the segment (zero at a collision).
    double min_lc_radius() const;
};

/// Unique exterior solution of the outer fixed-ends problem on a small
/// parameter window. Solves the duration equation by bracketed scan plus
/// bisection, tests exteriority by boundary-gap sampling, and returns the
/// smallest-duration exterior root.
OuterArc solve_outer_arc(const BoundaryCurve& curve, const BilliardParams& params,
                         double xi1, double xi2);

/// Inner fixed-ends solution. TnT picks the Levi-Civita branch with
/// w0 . w1 < 0; Direct (diagnostics only) the opposite. Antipodal or zero
/// endpoints are refused.
InnerArc solve_inner_arc(const BilliardParams& params, const Vec2& p0, const Vec2& p1,
                         HomotopyClass cls = HomotopyClass::TnT);

/// Initial-value flows; both validate the energy shell to 1e-9.
HarmonicFlow propagate_outer(const BilliardParams& params, const Vec2& z0, const Vec2& v0);
KeplerFlow propagate_inner(const BilliardParams& params, const Vec2& z0, const Vec2& v0);

/// Jacobi length of the radial inner path from the origin out to radius r,
/// closed form of the integral of sqrt(E + mu/r).
double radial_inner_length(double E, double mu, double r);

} // namespace refrabill

#endif
