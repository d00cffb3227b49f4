#pragma once

#include <array>

#include "emdk/exterior.hpp"
#include "emdk/fields.hpp"
#include "emdk/media.hpp"

namespace emdk {

/// Four 3-forms tau_0..tau_3.
struct DriveForms {
    std::array<PForm, 4> tau{PForm(3), PForm(3), PForm(3), PForm(3)};

    const PForm& operator[](int a) const { return tau[static_cast<std::size_t>(a)]; }
    PForm& operator[](int a) { return tau[static_cast<std::size_t>(a)]; }

    /// tau_Y = Y^a tau_a
    PForm contract(const Vector4& Y) const;
    double max_abs() const;
};

DriveForms operator+(const DriveForms& a, const DriveForms& b);
DriveForms operator-(const DriveForms& a, const DriveForms& b);
double max_abs_diff(const DriveForms& a, const DriveForms& b);

/// T_ab in the global orthonormal frame.
struct SemTensor {
    Matrix4 components = Matrix4::Zero();

    double operator()(int a, int b) const { return components(a, b); }
    double asymmetry() const { return (components - components.transpose()).cwiseAbs().maxCoeff(); }
};

// ============================================================================
// Vacuum drive forms
// ============================================================================

/// tau_Y = 1/2 (i_Y F ^ *F - i_Y *F ^ F).
PForm vacuum_drive(const PForm& F, const Vector4& Y);

struct KillingDecomposition {
    /// e ^ h ^ K~
    PForm poynting_part{3};
    /// 1/2 (g(e,e) + g(h,h))
    double energy_density = 0.0;
    /// -energy_density * *K~
    PForm energy_part{3};

    PForm total() const { return poynting_part + energy_part; }
};

KillingDecomposition killing_decompose(const PForm& F, const Velocity& K);

// ============================================================================
// Drive forms <-> tensors
// ============================================================================

/// T_ab = i_{X_b} * tau_a.
SemTensor drive_to_tensor(const DriveForms& tau);
/// tau_a = *(T_ab e^b).
DriveForms tensor_to_drive(const SemTensor& T);

/// max |e_c ^ tau_b - e_b ^ tau_c| (zero iff T is symmetric).
double symmetry_condition_violation(const DriveForms& tau);

// ============================================================================
// Media tensors
// ============================================================================

/// Abraham drive forms
/// tau_a = 1/2 (i_a G ^ *F - F ^ i_a *G) - V_a *s + 1/2 e_a ^ i_V *s, G = Z(F).
DriveForms abraham_drive(const PForm& F, const ConstitutiveZ& Z, const Velocity& V);

/// T = S - 1/2 <F,G> g - 1/2 (V~ (x) s + s (x) V~), S_ab = 1/2 (i_a F . i_b G + i_a G . i_b F).
SemTensor abraham_tensor(const PForm& F, const ConstitutiveZ& Z, const Velocity& V);

/// Symmetrized Minkowski drive forms 1/2 (i_a G ^ *F - F ^ i_a *G).
DriveForms minkowski_sym_drive(const PForm& F, const ConstitutiveZ& Z);

/// T = S - 1/2 <F,G> g, independent of any velocity.
SemTensor minkowski_sym_tensor(const PForm& F, const ConstitutiveZ& Z);

/// tau = tau1 + tau2 + tau3 + tau4 with
///   tau1_c = 1/2 (i_c G ^ *F - F ^ i_c *G)
///   tau2_c = V_c p ^ b ^ V~
///   tau3_c = -V_c m ^ e ^ V~
///   tau4_c = 1/2 e_c ^ (p ^ b - m ^ e)
struct PolarizationDriveSplit {
    std::array<DriveForms, 4> parts;

    DriveForms sum() const;
};

PolarizationDriveSplit polarization_drive_split(const PForm& F, const ConstitutiveZ& Z, const Velocity& V);

// ============================================================================
// Components, conservation, dust
// ============================================================================

/// Fields and tensor in the rest frame of V (Minkowski coordinates comoving with the medium).
struct ComovingReport {
    Eigen::Vector3d E, D, H, B;
    /// Abraham tensor components in the comoving frame
    Matrix4 T;
    /// the component table evaluated from E, D, H, B
    Matrix4 table;
};

/// T_00 = (E.D + H.B)/2, T_0k = -(E x H)_k,
/// T_ij = -(E_i D_j + E_j D_i)/2 - (H_i B_j + H_j B_i)/2 + delta_ij (E.D + H.B)/2.
Matrix4 component_table(const Eigen::Vector3d& E, const Eigen::Vector3d& D, const Eigen::Vector3d& H,
                        const Eigen::Vector3d& B);

ComovingReport comoving_report(const PForm& F, const ConstitutiveZ& Z, const Velocity& V);

/// max-abs component of d tau_K + i_K F ^ j, tau_K from the symmetrized Minkowski drive forms.
double conservation_residual(const SpacetimeField& F, const ConstitutiveZ& Z, const Vector4& K,
                             const SpacetimeField& j, const Point4& x);

/// T_em + m0 N V~ (x) V~.
SemTensor dust_total_tensor(const SemTensor& T_em, double N, double m0, const Velocity& V);

}  // namespace emdk
