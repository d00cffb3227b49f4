#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "emdk/scenario.hpp"

namespace emdk {

// ============================================================================
// Running scenarios
// ============================================================================

/// Process exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitNumerical = 3 };

/// Threshold applied to verify_variation residuals.
inline constexpr double kVariationResidualThreshold = 1e-7;

struct RunOptions {
    /// Overrides the scenario seed when set.
    std::optional<std::uint64_t> seed;
    /// With strict, residuals above their thresholds turn into exit code 3.
    bool strict = false;
    /// Overrides the finite-difference steps (stencil and variation) when set.
    std::optional<double> fd_step;
    double tol_classify = 1e-10;
    /// Debug aid: evaluate the identity suite with a deliberately wrong signature.
    bool inject_convention_flip = false;
};

struct RunOutcome {
    std::string report;  ///< JSON text, numbers with 17 significant digits
    int exit_code = kExitOk;
};

/// Execute the scenario's tasks in order and render the report.
RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options);

/// Execute only the classify task for the scenario's medium.
RunOutcome classify_scenario(const Scenario& scenario, const RunOptions& options);

/// Run the self-test suite on its own.
RunOutcome run_selftest_report(const RunOptions& options);

}  // namespace emdk
