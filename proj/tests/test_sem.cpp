#include <catch_amalgamated.hpp>

#include "emdk/sampling.hpp"
#include "emdk/sem.hpp"

using namespace emdk;
using Catch::Approx;

namespace {

double max_diff(const Matrix4& a, const Matrix4& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// F at rest built from electric and magnetic 3-vectors.
PForm rest_field(const Eigen::Vector3d& E, const Eigen::Vector3d& B) {
    const Velocity rest;
    Vector4 e = Vector4::Zero(), b = Vector4::Zero();
    e.tail<3>() = E;
    b.tail<3>() = B;
    return reconstruct_F({PForm::one_form(e), PForm::one_form(b)}, rest);
}

}  // namespace

// ============================================================================
// Vacuum drive forms
// ============================================================================

TEST_CASE("vacuum drive: zero field, linearity and energy density", "[sem]") {
    REQUIRE(vacuum_drive(PForm(2), Vector4(1, 0, 0, 0)).max_abs() == 0.0);
    Sampler rng(1);
    const PForm F = rng.form(2);
    const Vector4 Y1 = rng.vector(), Y2 = rng.vector();
    REQUIRE(max_abs_diff(vacuum_drive(F, 2.0 * Y1 + Y2), vacuum_drive(F, Y1) * 2.0 + vacuum_drive(F, Y2)) < 1e-14);

    // null plane wave: energy density E^2 (E^2 = B^2 = 1) on the spatial volume part
    const PForm N = (PForm::basis({0, 2}) - PForm::basis({1, 2}));
    const SemTensor T = drive_to_tensor(tensor_to_drive(minkowski_sym_tensor(N, ConstitutiveZ())));
    REQUIRE(T(0, 0) == Approx(1.0));
    const PForm tau0 = vacuum_drive(N, Vector4(1, 0, 0, 0));
    REQUIRE(std::abs(hodge(tau0)[0]) == Approx(1.0));
}

TEST_CASE("Killing decomposition", "[sem]") {
    const Velocity rest;
    const KillingDecomposition pure_e = killing_decompose(PForm::basis({0, 1}), rest);
    REQUIRE(pure_e.energy_density == Approx(0.5));
    REQUIRE(pure_e.poynting_part.max_abs() == 0.0);

    const KillingDecomposition crossed = killing_decompose(rest_field({1, 0, 0}, {0, 1, 0}), rest);
    const Vector4 sp = hodge(crossed.poynting_part).as_vector4();
    REQUIRE(std::abs(sp[3]) == Approx(1.0));
    REQUIRE(std::abs(sp[0]) + std::abs(sp[1]) + std::abs(sp[2]) == 0.0);

    Sampler rng(2);
    for (int i = 0; i < 100; ++i) {
        const PForm F = rng.form(2);
        const Velocity K = rng.velocity();
        const double scale = std::pow(K[0], 4);
        REQUIRE(max_abs_diff(killing_decompose(F, K).total(), vacuum_drive(F, K.vec())) < 1e-12 * scale);
    }
}

// ============================================================================
// Drive forms <-> tensors
// ============================================================================

TEST_CASE("drive/tensor round trip and the symmetry condition", "[sem]") {
    Sampler rng(3);
    DriveForms tau;
    for (int a = 0; a < 4; ++a) tau[a] = rng.form(3);
    REQUIRE(max_abs_diff(tensor_to_drive(drive_to_tensor(tau)), tau) < 1e-15);

    SemTensor S, A;
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            S.components(a, b) = S.components(b, a) = rng.uniform();
            if (a != b) {
                A.components(a, b) = rng.uniform();
                A.components(b, a) = -A.components(a, b);
            }
        }
    REQUIRE(symmetry_condition_violation(tensor_to_drive(S)) <= 1e-13);
    REQUIRE(symmetry_condition_violation(tensor_to_drive(A)) > 1e-3);
}

// ============================================================================
// Abraham and Minkowski tensors
// ============================================================================

TEST_CASE("vacuum: Abraham drive equals the vacuum drive per axis", "[sem][abraham]") {
    Sampler rng(4);
    for (int i = 0; i < 100; ++i) {
        const PForm F = rng.form(2);
        const Velocity V = rng.velocity();
        const DriveForms tau = abraham_drive(F, ConstitutiveZ(), V);
        for (int a = 0; a < 4; ++a) {
            Vector4 X = Vector4::Zero();
            X[a] = 1.0;
            REQUIRE(max_abs_diff(tau[a], vacuum_drive(F, X)) < 1e-12 * std::pow(V[0], 4));
        }
        REQUIRE(max_diff(abraham_tensor(F, ConstitutiveZ(), V).components,
                         minkowski_sym_tensor(F, ConstitutiveZ()).components) < 1e-12 * std::pow(V[0], 4));
    }
}

TEST_CASE("Abraham tensor: symmetry and agreement with its drive forms", "[sem][abraham]") {
    Sampler rng(5);
    for (int i = 0; i < 200; ++i) {
        const ConstitutiveZ Z = rng.self_adjoint_Z();
        const PForm F = rng.form(2);
        const Velocity V = rng.velocity();
        const SemTensor T = abraham_tensor(F, Z, V);
        const double scale = std::pow(V[0], 4);
        REQUIRE(T.asymmetry() < 1e-14 * scale);
        REQUIRE(max_diff(drive_to_tensor(abraham_drive(F, Z, V)).components, T.components) < 1e-12 * scale);
        REQUIRE(symmetry_condition_violation(abraham_drive(F, Z, V)) < 1e-12 * scale);
        // the difference from the symmetrized Minkowski tensor is the V~ (x) s part
        const Vector4 s = poynting_s(F, Z(F), V).as_vector4();
        const Vector4 Vt = V.dual().as_vector4();
        const Matrix4 diff = minkowski_sym_tensor(F, Z).components - T.components;
        REQUIRE(max_diff(diff, 0.5 * (Vt * s.transpose() + s * Vt.transpose())) < 1e-12 * scale);
    }
    REQUIRE(abraham_tensor(PForm(2), rng.self_adjoint_Z(), rng.velocity()).components.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE(minkowski_sym_tensor(PForm(2), rng.self_adjoint_Z()).components.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Abraham tensor rejects non-self-adjoint media", "[sem][abraham]") {
    Matrix6 R = Matrix6::Identity();
    R(0, 3) = 1.0;
    REQUIRE_THROWS_AS(abraham_tensor(PForm::basis({0, 1}), ConstitutiveZ(R), Velocity()), ValidationError);
    REQUIRE_THROWS_AS(abraham_drive(PForm::basis({0, 1}), ConstitutiveZ(R), Velocity()), ValidationError);
}

TEST_CASE("comoving component examples", "[sem][components]") {
    const Velocity rest;
    SECTION("dielectric along x") {
        const ConstitutiveZ Z = build_isotropic(2.0, 1.0, rest);
        const SemTensor T = abraham_tensor(rest_field({1, 0, 0}, {0, 0, 0}), Z, rest);
        REQUIRE(T(0, 0) == Approx(1.0));
        REQUIRE(T(1, 1) == Approx(-1.0));
        REQUIRE(T(2, 2) == Approx(1.0));
        REQUIRE(T(3, 3) == Approx(1.0));
        for (int k = 1; k < 4; ++k) REQUIRE(T(0, k) == 0.0);
    }
    SECTION("crossed vacuum fields") {
        const SemTensor T = abraham_tensor(rest_field({1, 0, 0}, {0, 1, 0}), ConstitutiveZ(), rest);
        REQUIRE(T(0, 0) == Approx(1.0));
        REQUIRE(T(0, 1) == Approx(0.0).margin(1e-15));
        REQUIRE(T(0, 2) == Approx(0.0).margin(1e-15));
        REQUIRE(T(0, 3) == Approx(-1.0));
    }
}

TEST_CASE("comoving report reproduces the component table", "[sem][components]") {
    Sampler rng(6);
    for (int i = 0; i < 100; ++i) {
        const Velocity V = rng.velocity();
        const Matrix4 L = boost_matrix(V.rapidity());
        // media that are isotropic or anisotropic in their rest frame have no magneto-electric part
        const ConstitutiveZ Z = i % 2 ? build_isotropic(rng.uniform(1, 4), rng.uniform(0.5, 2), V)
                                      : build_anisotropic(spatial_map(rng.spd3(), V.rapidity()),
                                                          spatial_map(rng.spd3(), V.rapidity()), V);
        const ComovingReport r = comoving_report(rng.form(2), Z, V);
        REQUIRE(max_diff(r.T, r.table) < 1e-12 * std::pow(V[0], 6));
        REQUIRE(r.T(0, 0) == Approx(0.5 * (r.E.dot(r.D) + r.H.dot(r.B))).margin(1e-12));
    }
    REQUIRE(max_diff(component_table({1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 1, 0}),
                     abraham_tensor(rest_field({1, 0, 0}, {0, 1, 0}), ConstitutiveZ(), Velocity()).components) <
            1e-15);
}

// ============================================================================
// Polarization split of the drive forms
// ============================================================================

TEST_CASE("polarization drive split", "[sem][split]") {
    Sampler rng(7);
    const PForm F = rng.form(2);
    const Velocity V = rng.velocity();
    const PolarizationDriveSplit vac = polarization_drive_split(F, ConstitutiveZ(), V);
    for (int k = 1; k < 4; ++k) REQUIRE(vac.parts[static_cast<std::size_t>(k)].max_abs() == 0.0);

    // m = 0 when mu = 1 and the medium is at rest with the observer
    const PolarizationDriveSplit diel = polarization_drive_split(F, build_isotropic(3.0, 1.0, V), V);
    REQUIRE(diel.parts[2].max_abs() < 1e-12 * std::pow(V[0], 4));

    for (int i = 0; i < 200; ++i) {
        const ConstitutiveZ Z = rng.self_adjoint_Z();
        const PForm Fr = rng.form(2);
        const Velocity Vr = rng.velocity();
        REQUIRE(max_abs_diff(polarization_drive_split(Fr, Z, Vr).sum(), abraham_drive(Fr, Z, Vr)) <
                1e-12 * std::pow(Vr[0], 6));
    }
}

// ============================================================================
// Conservation and dust
// ============================================================================

TEST_CASE("conservation residual for source-free fields", "[sem][conservation]") {
    const ConstitutiveZ vacuum;
    const Vector4 X0(1, 0, 0, 0);
    REQUIRE(conservation_residual(plane_wave_field({1, 0, 0}, {0, 1, 0}, 1.0), vacuum, X0, zero_current(),
                                  Point4(0.3, -0.1, 0.2, 0.0)) <= 1e-6);
    Sampler rng(8);
    REQUIRE(conservation_residual(uniform_field(rng.form(2)), rng.self_adjoint_Z(), rng.vector(), zero_current(),
                                  rng.vector()) < 1e-12);
    REQUIRE(conservation_residual(coulomb_field(1.0, Eigen::Vector3d::Zero()), vacuum, X0, zero_current(),
                                  Point4(0.0, 1.0, 0.7, -0.4)) <= 1e-6);
}

TEST_CASE("conservation residual with a source balances the Lorentz force", "[sem][conservation]") {
    // E = x^1 e^1 at rest: dF = 0 and the charge density is uniform
    const SpacetimeField F{[](const Point4& y) { return PForm::basis({0, 1}) * y[1]; }, 2, 1e-3};
    const ConstitutiveZ vacuum;
    const SpacetimeField j{[F](const Point4& y) { return exterior_derivative(SpacetimeField{[F](const Point4& z) { return hodge(F(z)); }, 2, 1e-3}, y); }, 3, 1e-3};
    const Point4 x(0.0, 0.6, 0.0, 0.0);
    for (int a = 0; a < 4; ++a) {
        Vector4 K = Vector4::Zero();
        K[a] = 1.0;
        REQUIRE(conservation_residual(F, vacuum, K, j, x) < 1e-8);
    }
    // the wrong-sign current does not balance
    const SpacetimeField minus_j{[j](const Point4& y) { return j(y) * -1.0; }, 3, 1e-3};
    REQUIRE(conservation_residual(F, vacuum, Vector4(0, 1, 0, 0), minus_j, x) > 0.1);
}

TEST_CASE("dust total tensor", "[sem][dust]") {
    Sampler rng(9);
    const SemTensor T = abraham_tensor(rng.form(2), rng.self_adjoint_Z(), rng.velocity());
    REQUIRE(max_diff(dust_total_tensor(T, 0.0, 1.0, Velocity()).components, T.components) == 0.0);
    const SemTensor D = dust_total_tensor(SemTensor{}, 1.0, 1.0, Velocity());
    Matrix4 expected = Matrix4::Zero();
    expected(0, 0) = 1.0;
    REQUIRE(max_diff(D.components, expected) == 0.0);
    REQUIRE(dust_total_tensor(T, 2.0, 0.5, rng.velocity()).asymmetry() < 1e-13);
    REQUIRE_THROWS_AS(dust_total_tensor(T, -1.0, 1.0, Velocity()), ValidationError);
}
