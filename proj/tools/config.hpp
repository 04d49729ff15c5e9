#ifndef REFRABILL_TOOLS_CONFIG_HPP
#define REFRABILL_TOOLS_CONFIG_HPP

#include <string>
#include <vector>

#include "refrabill/boundary.hpp"
#include "refrabill/params.hpp"

namespace refrabill::tools {

/// Resolved run configuration: file values overridden by CLI flags.
/// Unknown keys in the file are rejected.
struct RunConfig {
    CurveSpec curve = CurveSpec::ellipse(1.5, 1.0);
    double omega2 = 1.0;
    double mu = 1.0;
    double calE = 2.0;
    double h = 100.0;
    std::vector<double> h_grid; ///< used by scan when non-empty
    double half_width_rel = 0.05; ///< interval half-width as a fraction of L
    unsigned long seed = 1;
    std::string outdir = ".";
    int threads = 0; ///< 0: hardware concurrency (capped by REFRABILL_THREADS)

    BilliardParams params() const { return {omega2, mu, calE, h}; }
};

/// Parses the key-value config file ([curve] / [params] / [run] sections).
/// Throws std::runtime_error with a message on malformed input or unknown keys.
RunConfig load_config(const std::string& path);

/// Serialized form of the resolved config, embedded in every report.
std::string describe_config(const RunConfig& cfg);

std::vector<double> parse_double_list(const std::string& csv);
std::vector<int> parse_symbol_list(const std::string& csv); ///< 1-based to 0-based

} // namespace refrabill::tools

#endif
