#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emdk/exterior.hpp"
#include "emdk/fields.hpp"
#include "emdk/media.hpp"
#include "emdk/variation.hpp"

namespace emdk {

// ============================================================================
// Scenario description
// ============================================================================

/// Tasks understood by the runner, in the order they appear in the scenario file.
inline const std::vector<std::string>& known_tasks() {
    static const std::vector<std::string> tasks{"decompose",      "sem_abraham", "sem_minkowski", "post_invariant",
                                                "classify",       "verify_variation", "selftest"};
    return tasks;
}

/// Medium block. 3x3 matrices are given in the medium rest frame and carried to the
/// lab frame by the medium rapidity; the 6x6 matrix is given directly in the lab frame
/// using the bivector order (01,02,03,23,31,12).
struct MediumSpec {
    std::string kind = "vacuum";  ///< vacuum | isotropic | anisotropic | zeta | matrix
    double eps = 1.0;
    double mu = 1.0;
    Eigen::Matrix3d eps3 = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d mu3 = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d zde = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d zdb = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d zhe = Eigen::Matrix3d::Zero();
    Eigen::Matrix3d zhb = Eigen::Matrix3d::Identity();
    Matrix6 matrix = Matrix6::Identity();
};

/// Field block: explicit components (uniform field) or a vacuum plane wave evaluated at `point`.
struct FieldSpec {
    std::string family = "uniform";  ///< uniform | plane_wave
    Vector6 components = Vector6::Zero();
    Eigen::Vector3d direction = Eigen::Vector3d::UnitX();
    Eigen::Vector3d polarization = Eigen::Vector3d::UnitY();
    double amplitude = 1.0;
    double wavenumber = 1.0;
    Point4 point = Point4::Zero();
};

struct Scenario {
    std::string name;
    MediumSpec medium;
    FieldSpec field;
    Eigen::Vector3d medium_rapidity = Eigen::Vector3d::Zero();
    Eigen::Vector3d observer_rapidity = Eigen::Vector3d::Zero();
    std::vector<std::string> tasks;
    std::optional<std::uint64_t> seed;
    /// Explicit coframe variation rows e-dot^a; drawn from the seed when absent.
    std::optional<Matrix4> edot;

    Velocity medium_velocity() const { return Velocity::from_rapidity(medium_rapidity); }
    Velocity observer() const { return Velocity::from_rapidity(observer_rapidity); }
    ConstitutiveZ constitutive() const;
    SpacetimeField field_sampler(double stencil_h) const;
    /// F at the evaluation point.
    PForm field_value() const;
};

/// Parse and validate a scenario document. Errors are reported as ValidationError with a
/// "<source>:<line>:<column>" prefix for syntax errors and the JSON path of the offending
/// field for schema errors.
Scenario parse_scenario(const std::string& text, const std::string& source = "<scenario>");

/// Read a scenario file (ValidationError when the file cannot be read).
Scenario load_scenario(const std::string& path);

}  // namespace emdk
