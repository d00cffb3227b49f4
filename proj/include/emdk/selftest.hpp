#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emdk/exterior.hpp"

namespace emdk {

/// Hodge convention used by the identity suite; anything other than the default is a
/// deliberate convention error used to prove the suite can fail.
struct HodgeConvention {
    int orientation = kOrientation;
    int signature = 1;
};

struct CheckResult {
    std::string name;
    int samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// The seven standard identities (wedge symmetry, star pivot, i_X*, *i_X, **, i_X move,
/// d move) on random unit-scale inputs.
std::vector<CheckResult> run_identity_suite(std::uint64_t seed, int samples_per_identity, double tol = 1e-12,
                                            const HodgeConvention& convention = {});

struct SelftestOptions {
    std::uint64_t seed = 0;
    int samples = 200;
    double fd_step = 1e-5;
    HodgeConvention convention;
};

/// Identity suite, round trips, Post invariant cross-check and one variational check.
std::vector<CheckResult> run_selftest(const SelftestOptions& options);

}  // namespace emdk
