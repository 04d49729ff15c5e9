#ifndef REFRABILL_SHOOTING_HPP
#define REFRABILL_SHOOTING_HPP

#include <string>
#include <vector>

#include "refrabill/arcs.hpp"
#include "refrabill/jacobi.hpp"
#include "refrabill/words.hpp"

namespace refrabill {

/// Alternating outer/inner chain for a word, starting with an outer arc.
/// Periodic chains carry 2n transition parameters (wrapped), fixed-ends
/// chains 2n-1 with pinned first and last entries.
struct Concatenation {
    Word word;
    ChainMode mode = ChainMode::Periodic;
    std::vector<double> xi;
    std::vector<OuterArc> outer_arcs;
    std::vector<InnerArc> inner_arcs;
    /// Snell residual per junction parameter; pinned endpoints carry NaN
    /// (their residual is not required to vanish).
    std::vector<double> snell_residuals;
    double total_jacobi_length = 0.0;
    double period = 0.0; ///< sum of all arc durations

    double max_residual() const;
    bool realized(double tol = 1.0e-8) const { return max_residual() < tol; }
    int n_pairs() const { return int(outer_arcs.size()); }
};

/// Chain assembly for a given parameter vector (no optimization).
Concatenation build_concatenation(const BoundaryCurve& curve, const BilliardParams& params,
                                  const Word& word, const std::vector<double>& xi,
                                  ChainMode mode);

struct FaceSignReport {
    int coordinate = 0;
    double lo_min = 0.0, lo_max = 0.0; ///< F_k range on the alpha face
    double hi_min = 0.0, hi_max = 0.0; ///< F_k range on the beta face
    int samples_per_face = 0;
    int doublings = 0;
    bool opposite_uniform = false;
};

enum class MirandaStatus { Pass, Fail, Inconclusive, ArcFailure };

struct MirandaReport {
    MirandaStatus status = MirandaStatus::Inconclusive;
    std::vector<FaceSignReport> faces;
    std::string note;
    bool pass() const { return status == MirandaStatus::Pass; }
};

/// Sign check of the gradient components on opposite faces of the parameter
/// box. Strict opposite uniform signs on every coordinate certify an interior
/// critical point. Mixed signs report Inconclusive (h too small or intervals
/// too wide); uniform equal signs report Fail.
MirandaReport miranda_check(const BoundaryCurve& curve, const BilliardParams& params,
                            const IntervalSystem& system, const Word& word, ChainMode mode,
                            double xi_a = 0.0, double xi_b = 0.0);

enum class RealizeStatus { Converged, NoConvergence, ArcFailure, MirandaNotPassed };

struct RealizeOptions {
    std::vector<double> seed; ///< empty: box center
    double grad_tol = 1.0e-10;
    int max_iterations = 50;
    double fd_step_rel = 1.0e-6; ///< Jacobian step, relative to L
    bool run_miranda = true;     ///< certificate before Newton
};

struct RealizeResult {
    RealizeStatus status = RealizeStatus::NoConvergence;
    Concatenation chain;
    MirandaReport miranda;
    double grad_inf = 0.0;
    int iterations = 0;
    bool boundary_critical_point = false; ///< critical point pinned on a box face
    std::string note;
    bool ok() const { return status == RealizeStatus::Converged; }
};

/// Newton refinement of the total-length gradient inside the word's box,
/// with coordinate-wise bisection sweeps as fallback. Miranda acts as the
/// existence certificate, Newton as the solver.
RealizeResult realize_periodic(const BoundaryCurve& curve, const BilliardParams& params,
                               const IntervalSystem& system, const Word& word,
                               const RealizeOptions& options = {});

/// Fixed-ends variant: endpoints pinned at xi_a in the first symbol's
/// interval and xi_b in the last one's; 2n-3 free parameters.
RealizeResult realize_fixed_ends(const BoundaryCurve& curve, const BilliardParams& params,
                                 const IntervalSystem& system, const Word& word,
                                 double xi_a, double xi_b,
                                 const RealizeOptions& options = {});

struct CoordinateMonotonicity {
    int coordinate = 0;
    int sign = 0; ///< sign of dF_k/dx_k over the sampled box slices
    bool constant = false;
};

struct UniquenessReport {
    bool applicable = false; ///< non-degenerate configurations, convex/concave radius
    bool unique = false;     ///< every F_k strictly monotone in its own coordinate
    std::vector<CoordinateMonotonicity> coordinates;
    std::string note;
};

/// Verifies that each Miranda component is monotone in its own coordinate
/// (second-derivative sums of constant sign), which makes the realized
/// critical point unique in the box.
UniquenessReport uniqueness_check(const BoundaryCurve& curve, const BilliardParams& params,
                                  const IntervalSystem& system, const Word& word);

} // namespace refrabill

#endif
