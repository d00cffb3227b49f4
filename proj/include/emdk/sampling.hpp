#pragma once

#include <cstdint>
#include <random>

#include "emdk/exterior.hpp"
#include "emdk/fields.hpp"
#include "emdk/media.hpp"
#include "emdk/variation.hpp"

namespace emdk {

/// Deterministic generators of unit-scale random inputs shared by the self-test and tests.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = -1.0, double hi = 1.0);
    PForm form(int degree);
    Vector4 vector();
    Eigen::Vector3d vector3(double scale = 1.0);
    Velocity velocity(double max_rapidity = 1.0);
    /// Proper orthochronous Lorentz transformation: rotation times boost.
    Matrix4 lorentz(double max_rapidity = 1.0);
    /// Symmetric positive definite 3x3 with eigenvalues in [lo, hi].
    Eigen::Matrix3d spd3(double lo = 0.5, double hi = 3.0);
    /// Uniform random self-adjoint constitutive tensor (21 free parameters).
    ConstitutiveZ self_adjoint_Z();
    ConstitutiveZ isotropic_Z();
    ConstitutiveZ anisotropic_Z();
    CoframeVariation variation(double scale = 1.0);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace emdk
