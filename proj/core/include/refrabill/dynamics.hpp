#ifndef REFRABILL_DYNAMICS_HPP
#define REFRABILL_DYNAMICS_HPP

#include <string>
#include <vector>

#include "refrabill/arcs.hpp"
#include "refrabill/words.hpp"

namespace refrabill {

enum class Orientation { Outward, Inward };

/// Boundary state on the outer energy shell: |v|^2 / 2 = V_E(gamma(xi)).
struct SurfaceState {
    double xi = 0.0;
    Vec2 v;
    Orientation orientation = Orientation::Outward;

    /// Tangential velocity component, the second chart coordinate.
    double tangential(const BoundaryCurve& curve) const {
        return v.dot(curve.frame(xi).tangent);
    }
};

/// Outward state from chart coordinates (xi, a); the normal component is
/// fixed by the outer energy shell.
SurfaceState make_outward_state(const BoundaryCurve& curve, const BilliardParams& params,
                                double xi, double tangential);

enum class RefractDirection { OutwardToInner, InnerToOutward };

/// Snell refraction across the interface at gamma(xi): the tangential
/// component is preserved, the normal component jumps to the other energy
/// shell keeping its sign. InnerToOutward is only defined inside the
/// critical cone |v . t| <= sqrt(2 V_E).
Vec2 refract(const BilliardParams& params, const BoundaryCurve& curve, const Vec2& v,
             double xi, RefractDirection direction);

enum class StepStatus {
    Ok,
    NotInWindow,       ///< initial parameter outside every interval
    Escape,            ///< outer arc never re-enters the domain
    WrongWindow,       ///< crossing lands outside the allowed intervals
    CriticalAngleTrap, ///< inner exit outside the transmission cone
    TangentialGrazing, ///< boundary crossing with |v . n| below tolerance
};

std::string to_string(StepStatus s);

/// Bookkeeping for one outer-inner transit.
struct TransitRecord {
    SurfaceState entry;       ///< outward state at the start
    SurfaceState exit;        ///< outward state after the full transit (if Ok)
    double s_outer = 0.0;     ///< outer leg duration
    double s_inner = 0.0;     ///< inner leg duration
    double xi1 = 0.0;         ///< re-entry parameter
    Vec2 v1;                  ///< arrival velocity at re-entry (outer shell)
    Vec2 v1_refracted;        ///< inner-shell velocity after entering
    Vec2 v2_inner;            ///< inner-shell velocity at the exit crossing
    int interval_from = -1;   ///< alphabet index at entry
    int interval_to = -1;     ///< alphabet index at exit
    bool collision = false;   ///< inner leg passed through the origin
    StepStatus status = StepStatus::Ok;
};

struct StepResult {
    StepStatus status = StepStatus::Ok;
    SurfaceState next;
    TransitRecord record;
    bool ok() const { return status == StepStatus::Ok; }
};

/// First-return map: outer arc, refraction, inner arc, refraction. Strict
/// window semantics follow the symbolic-dynamics construction: the outer
/// re-entry must land in the starting interval and the inner exit in a
/// non-antipodal one. `permissive` keeps stepping through window violations
/// (exploratory use), still recording them.
StepResult return_map(const BoundaryCurve& curve, const BilliardParams& params,
                      const IntervalSystem& system, const SurfaceState& state,
                      bool permissive = false);

/// Inverse return map by state reversal and forward stepping of the reversed
/// transit (inner leg first), then reversing the result.
StepResult return_map_inverse(const BoundaryCurve& curve, const BilliardParams& params,
                              const IntervalSystem& system, const SurfaceState& state,
                              bool permissive = false);

struct TraceSample {
    double s = 0.0; ///< time along the trace, 0 at the initial state
    Vec2 z, v;
    char regime = 'O';         ///< 'O' outer, 'I' inner
    int crossing_interval = -1; ///< alphabet index at a boundary crossing, else -1
};

struct TraceResult {
    std::vector<TraceSample> samples; ///< time ordered
    WordWindow window;                ///< symbols visited, offset 0 = initial state
    std::vector<TransitRecord> forward_records;
    std::vector<TransitRecord> backward_records; ///< in backward step order
    int steps_forward = 0;
    int steps_backward = 0;
    StepStatus forward_stop = StepStatus::Ok;  ///< first forward error, if any
    StepStatus backward_stop = StepStatus::Ok; ///< first backward error, if any
};

/// Iterates the return map and its inverse up to the requested depths or the
/// first error per direction, emitting the symbolic window and the sampled
/// trajectory.
TraceResult trace(const BoundaryCurve& curve, const BilliardParams& params,
                  const IntervalSystem& system, const SurfaceState& state, int n_forward,
                  int n_backward, bool permissive = false, int samples_per_arc = 64);

/// Alphabet index of the interval containing xi, or -1.
int interval_index(const IntervalSystem& system, const BoundaryCurve& curve, double xi);

} // namespace refrabill

#endif
