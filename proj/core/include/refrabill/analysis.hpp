#ifndef REFRABILL_ANALYSIS_HPP
#define REFRABILL_ANALYSIS_HPP

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "refrabill/dynamics.hpp"
#include "refrabill/shooting.hpp"

namespace refrabill {

/// Linearization of the return map at a homothetic equilibrium, in the
/// chart (xi, tangential velocity component).
struct SaddleReport {
    int cc_index = -1; ///< alphabet index of the central configuration
    double h = 0.0;
    std::array<std::array<double, 2>, 2> jacobian{};
    std::complex<double> eig1, eig2;
    enum class Type { Saddle, Elliptic, ParabolicWithinTol } classification =
        Type::ParabolicWithinTol;
    double det = 0.0;
    bool det_ok = false; ///< |det - 1| < 5e-3, numerical health check
    double fixed_point_drift = 0.0;

    /// Expanding multiplier (for a saddle, the eigenvalue above 1).
    double lambda() const { return std::max(std::abs(eig1), std::abs(eig2)); }
};

/// Finite-difference spectrum of the return map around the homothetic fixed
/// point of a non-degenerate central configuration. Steps 1e-6 and 1e-7 are
/// Richardson-combined.
SaddleReport saddle_spectrum(const BoundaryCurve& curve, const BilliardParams& params,
                             const IntervalSystem& system, int cc_index);

struct HeteroclinicReport {
    Word word;
    RealizeResult realization;
    std::vector<double> lead_dist;  ///< |xi_hat - xi_bar_i| along the leading pad
    std::vector<double> trail_dist; ///< |xi_hat - xi_bar_j| along the trailing pad
    double lead_rate = 0.0;         ///< fitted geometric ratio (median of successive)
    double trail_rate = 0.0;
    bool ok() const { return realization.ok(); }
};

/// Fixed-ends realization of i^pad ++ bridge ++ j^pad pinned at the two
/// central configurations; the pads shadow the saddles' invariant manifolds.
HeteroclinicReport heteroclinic_realize(const BoundaryCurve& curve,
                                        const BilliardParams& params,
                                        const IntervalSystem& system, int i, int j, int pad,
                                        const std::vector<int>& bridge,
                                        const RealizeOptions& options = {});

struct ThresholdRow {
    double h = 0.0;
    bool containment = false;  ///< every sampled TnT arc stays inside D
    bool change_sign = false;  ///< uniform opposite face signs (interval level)
    bool words_pass = false;   ///< Miranda pass for every word in the set
    bool saddles = false;      ///< every configuration classifies as a saddle
};

struct ThresholdScan {
    std::vector<ThresholdRow> rows;
    double h0_hat = 0.0; ///< smallest grid h with containment from there on (0 = none)
    double h1_hat = 0.0; ///< smallest grid h with containment + sign conditions
    bool euclidean_change_sign = false; ///< r' opposite at interval ends (h-free)
    bool monotone = true;            ///< all criteria monotone on the grid
    bool monotone_containment = true;
    bool monotone_change_sign = true;
    bool monotone_words = true;
    bool monotone_saddles = true; ///< violations are geometry warnings, not failures
};

/// One grid row of the threshold scan; rows are independent, so callers may
/// compute them in parallel and assemble afterwards.
ThresholdRow threshold_row(const BoundaryCurve& curve, const BilliardParams& params,
                           const IntervalSystem& system, const std::vector<Word>& words);

/// Threshold extraction and monotonicity report from computed rows.
ThresholdScan assemble_threshold_scan(const BoundaryCurve& curve,
                                      const IntervalSystem& system,
                                      std::vector<ThresholdRow> rows);

/// Scans the h grid for the inner-arc containment and change-sign thresholds;
/// the scan itself is the measurement, nothing is assumed.
ThresholdScan threshold_scan(const BoundaryCurve& curve, const BilliardParams& params_base,
                             const IntervalSystem& system, const std::vector<Word>& words,
                             const std::vector<double>& h_grid);

struct SensitivityReport {
    RealizeStatus status1 = RealizeStatus::NoConvergence;
    RealizeStatus status2 = RealizeStatus::NoConvergence;
    double state_separation = 0.0; ///< distance of the centered states in (xi, a)
    WordDistance word_dist;
    double xi_center_1 = 0.0, xi_center_2 = 0.0;
};

/// Realizes two words over a window of the given depth and compares the
/// centered states: distinct words give separated states (injectivity
/// witness), long shared blocks give nearby ones (continuity witness).
SensitivityReport sensitivity_probe(const BoundaryCurve& curve, const BilliardParams& params,
                                    const IntervalSystem& system, const Word& word1,
                                    const Word& word2, int depth);

} // namespace refrabill

#endif
