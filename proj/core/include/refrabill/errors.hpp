#ifndef REFRABILL_ERRORS_HPP
#define REFRABILL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace refrabill {

/// Invalid curve or parameter specification (bad config input).
struct SpecError : std::invalid_argument {
    explicit SpecError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Domain fails the admissibility requirements (too few strict central
/// configurations, antipodal pair with m = 2, empty non-antipodal sets, ...).
struct InadmissibleDomain : std::runtime_error {
    explicit InadmissibleDomain(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two-point arc solver failures.
struct ArcError : std::runtime_error {
    enum class Kind {
        NoExteriorRoot,
        Tangency,
        AntipodalEndpoints,
        ZeroEndpoint,
        EnergyMismatch,
        CollisionSingularity,
    };
    Kind kind;
    ArcError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

/// Precondition violations of analysis/shooting entry points.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Inner-to-outer refraction requested beyond the critical angle.
struct TotalInternalReflection : std::runtime_error {
    explicit TotalInternalReflection(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace refrabill

#endif
