#ifndef REFRABILL_JACOBI_HPP
#define REFRABILL_JACOBI_HPP

#include <vector>

#include "refrabill/arcs.hpp"
#include "refrabill/boundary.hpp"
#include "refrabill/params.hpp"

namespace refrabill {

/// Jacobi length of one arc together with its partial derivatives with
/// respect to the two boundary parameters. The partials are the tangential
/// projections of sqrt(V) at the endpoints (generating-function identities),
/// not finite differences.
struct JacobiValue {
    double value = 0.0;
    double d_a = 0.0;
    double d_b = 0.0;
};

/// Outer Jacobi length: adaptive quadrature of sqrt(2) V_E along the arc.
JacobiValue s_outer(const BoundaryCurve& curve, const BilliardParams& params,
                    double xi1, double xi2);

/// Inner Jacobi length by the Levi-Civita closed form. Coincident (parallel)
/// endpoints switch to the radial closed form, which is immune to the
/// w0 . w1 = -|w0|^2 cancellation.
JacobiValue s_inner(const BoundaryCurve& curve, const BilliardParams& params,
                    double xi1, double xi2);

/// Closed-form Jacobi length of an already solved inner arc.
double inner_length_closed_form(const InnerArc& arc);

enum class ChainMode { Periodic, FixedEnds };

struct TotalLength {
    double value = 0.0;
    std::vector<double> gradient; ///< same layout as the parameter vector
};

/// Total Jacobi length of an alternating outer/inner chain and its gradient.
/// Periodic chains carry 2n parameters with wraparound; fixed-ends chains
/// carry 2n-1 parameters whose first and last entries are pinned (their
/// gradient slots hold the one-sided partials, which need not vanish).
/// Arc failures are annotated with the offending parameter index.
TotalLength total_length(const BoundaryCurve& curve, const BilliardParams& params,
                         const std::vector<double>& xi, ChainMode mode);

/// Derivative-only fast paths: partials of S without the length quadrature.
/// first = d_a, second = d_b.
std::pair<double, double> outer_partials(const BoundaryCurve& curve,
                                         const BilliardParams& params, double xi1,
                                         double xi2);
std::pair<double, double> inner_partials(const BoundaryCurve& curve,
                                         const BilliardParams& params, double xi1,
                                         double xi2);

/// Tangential-momentum mismatch at a junction shared by an outer and an inner
/// arc: sqrt(V_E) vE_hat . t - sqrt(V_I) vI_hat . t with the incident and
/// emergent velocities at gamma(xi). Zero exactly when Snell's law holds.
double snell_residual(const BoundaryCurve& curve, const BilliardParams& params,
                      const OuterArc& outer, const InnerArc& inner, double xi);

} // namespace refrabill

#endif
