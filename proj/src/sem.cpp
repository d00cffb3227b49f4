#include "emdk/sem.hpp"

#include <cmath>
#include <sstream>

#include "emdk/errors.hpp"

namespace emdk {

PForm DriveForms::contract(const Vector4& Y) const {
    PForm out(3);
    for (int a = 0; a < 4; ++a) out += tau[static_cast<std::size_t>(a)] * Y[a];
    return out;
}

double DriveForms::max_abs() const {
    double m = 0.0;
    for (const auto& t : tau) m = std::max(m, t.max_abs());
    return m;
}

DriveForms operator+(const DriveForms& a, const DriveForms& b) {
    DriveForms r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
    return r;
}

DriveForms operator-(const DriveForms& a, const DriveForms& b) {
    DriveForms r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
}

double max_abs_diff(const DriveForms& a, const DriveForms& b) { return (a - b).max_abs(); }

namespace {

void require_field(const PForm& F) {
    if (F.degree() != 2) throw ValidationError("field strength must be a 2-form");
}

void require_self_adjoint(const ConstitutiveZ& Z) {
    const AdjointCheck check = is_self_adjoint(Z, 1e-10);
    if (!check.self_adjoint) {
        std::ostringstream os;
        os << "constitutive tensor is not self-adjoint (violation " << check.max_violation << ")";
        throw ValidationError(os.str());
    }
}

/// e_a = eta_ab e^b
PForm lowered_coframe(int a) { return PForm::basis({a}) * kEta[a]; }

/// S_xy = 1/2 sum_c eta^cc [(i_c F)_x (i_c G)_y + (i_c G)_x (i_c F)_y]
Matrix4 contraction_part(const PForm& F, const PForm& G) {
    Matrix4 S = Matrix4::Zero();
    for (int c = 0; c < 4; ++c) {
        const Vector4 f = interior(c, F).as_vector4();
        const Vector4 g = interior(c, G).as_vector4();
        S += 0.5 * kEta[c] * (f * g.transpose() + g * f.transpose());
    }
    return S;
}

}  // namespace

// ============================================================================
// Vacuum drive forms
// ============================================================================

PForm vacuum_drive(const PForm& F, const Vector4& Y) {
    require_field(F);
    const PForm sF = hodge(F);
    return (wedge(interior(Y, F), sF) - wedge(interior(Y, sF), F)) * 0.5;
}

KillingDecomposition killing_decompose(const PForm& F, const Velocity& K) {
    const FieldDecomp eb = decompose_F(F, K);
    const PForm& e = eb.first;
    const PForm& h = eb.second;  // vacuum: h = b
    const PForm Kt = K.dual();
    KillingDecomposition out;
    out.poynting_part = wedge(wedge(e, h), Kt);
    out.energy_density = 0.5 * (inner(e, e) + inner(h, h));
    out.energy_part = hodge(Kt) * (-out.energy_density);
    return out;
}

// ============================================================================
// Drive forms <-> tensors
// ============================================================================

SemTensor drive_to_tensor(const DriveForms& tau) {
    SemTensor T;
    for (int a = 0; a < 4; ++a) {
        if (tau[a].degree() != 3) throw ValidationError("drive forms must be 3-forms");
        T.components.row(a) = hodge(tau[a]).as_vector4().transpose();
    }
    return T;
}

DriveForms tensor_to_drive(const SemTensor& T) {
    DriveForms tau;
    for (int a = 0; a < 4; ++a) tau[a] = hodge(PForm::one_form(T.components.row(a).transpose()));
    return tau;
}

double symmetry_condition_violation(const DriveForms& tau) {
    double worst = 0.0;
    for (int b = 0; b < 4; ++b)
        for (int c = b + 1; c < 4; ++c)
            worst = std::max(worst, (wedge(lowered_coframe(c), tau[b]) - wedge(lowered_coframe(b), tau[c])).max_abs());
    return worst;
}

// ============================================================================
// Media tensors
// ============================================================================

DriveForms minkowski_sym_drive(const PForm& F, const ConstitutiveZ& Z) {
    require_field(F);
    require_self_adjoint(Z);
    const PForm G = Z(F);
    const PForm sF = hodge(F), sG = hodge(G);
    DriveForms tau;
    for (int a = 0; a < 4; ++a) tau[a] = (wedge(interior(a, G), sF) - wedge(F, interior(a, sG))) * 0.5;
    return tau;
}

SemTensor minkowski_sym_tensor(const PForm& F, const ConstitutiveZ& Z) {
    require_field(F);
    require_self_adjoint(Z);
    const PForm G = Z(F);
    SemTensor T;
    T.components = contraction_part(F, G) - 0.5 * inner(F, G) * eta_matrix();
    return T;
}

DriveForms abraham_drive(const PForm& F, const ConstitutiveZ& Z, const Velocity& V) {
    DriveForms tau = minkowski_sym_drive(F, Z);
    const PForm s = poynting_s(F, Z(F), V);
    const PForm ss = hodge(s);
    const PForm iVss = interior(V.vec(), ss);
    for (int a = 0; a < 4; ++a) {
        const double Va = kEta[a] * V[a];
        tau[a] += wedge(lowered_coframe(a), iVss) * 0.5 - ss * Va;
    }
    return tau;
}

SemTensor abraham_tensor(const PForm& F, const ConstitutiveZ& Z, const Velocity& V) {
    SemTensor T = minkowski_sym_tensor(F, Z);
    const Vector4 s = poynting_s(F, Z(F), V).as_vector4();
    const Vector4 Vt = V.dual().as_vector4();
    T.components -= 0.5 * (Vt * s.transpose() + s * Vt.transpose());
    return T;
}

DriveForms PolarizationDriveSplit::sum() const { return parts[0] + parts[1] + parts[2] + parts[3]; }

PolarizationDriveSplit polarization_drive_split(const PForm& F, const ConstitutiveZ& Z, const Velocity& V) {
    PolarizationDriveSplit out;
    out.parts[0] = minkowski_sym_drive(F, Z);
    const PForm G = Z(F);
    const FieldDecomp eb = decompose_F(F, V);
    const PolarizationSplit pm = polarization_split(F, G, V);
    const PForm Vt = V.dual();
    const PForm pb = wedge(pm.p, eb.second);
    const PForm me = wedge(pm.m, eb.first);
    for (int c = 0; c < 4; ++c) {
        const double Vc = kEta[c] * V[c];
        out.parts[1][c] = wedge(pb, Vt) * Vc;
        out.parts[2][c] = wedge(me, Vt) * (-Vc);
        out.parts[3][c] = wedge(lowered_coframe(c), pb - me) * 0.5;
    }
    return out;
}

// ============================================================================
// Components, conservation, dust
// ============================================================================

Matrix4 component_table(const Eigen::Vector3d& E, const Eigen::Vector3d& D, const Eigen::Vector3d& H,
                        const Eigen::Vector3d& B) {
    Matrix4 T = Matrix4::Zero();
    const double u = 0.5 * (E.dot(D) + H.dot(B));
    T(0, 0) = u;
    const Eigen::Vector3d S = -E.cross(H);
    for (int k = 0; k < 3; ++k) T(0, k + 1) = T(k + 1, 0) = S[k];
    const Eigen::Matrix3d stress = -0.5 * (E * D.transpose() + D * E.transpose()) -
                                   0.5 * (H * B.transpose() + B * H.transpose()) + u * Eigen::Matrix3d::Identity();
    T.block<3, 3>(1, 1) = stress;
    return T;
}

ComovingReport comoving_report(const PForm& F, const ConstitutiveZ& Z, const Velocity& V) {
    const Matrix4 L = boost_matrix(V.rapidity());
    const PForm Fr = to_frame(F, L);
    const ConstitutiveZ Zr = to_frame(Z, L);
    const Velocity rest;
    const FieldDecomp eb = decompose_F(Fr, rest);
    const FieldDecomp dh = decompose_G(Zr(Fr), rest);
    ComovingReport out;
    out.E = eb.first.as_vector4().tail<3>();
    out.B = eb.second.as_vector4().tail<3>();
    out.D = dh.first.as_vector4().tail<3>();
    out.H = dh.second.as_vector4().tail<3>();
    out.T = L.transpose() * abraham_tensor(F, Z, V).components * L;
    out.table = component_table(out.E, out.D, out.H, out.B);
    return out;
}

double conservation_residual(const SpacetimeField& F, const ConstitutiveZ& Z, const Vector4& K,
                             const SpacetimeField& j, const Point4& x) {
    if (F.degree != 2 || j.degree != 3) throw ValidationError("conservation residual needs a 2-form field and a 3-form current");
    const SpacetimeField tauK{[F, Z, K](const Point4& y) { return minkowski_sym_drive(F(y), Z).contract(K); }, 3,
                              F.stencil_h};
    return (exterior_derivative(tauK, x) + wedge(interior(K, F(x)), j(x))).max_abs();
}

SemTensor dust_total_tensor(const SemTensor& T_em, double N, double m0, const Velocity& V) {
    if (!(N >= 0.0)) throw ValidationError("dust number density must be non-negative");
    const Vector4 Vt = V.dual().as_vector4();
    SemTensor T = T_em;
    T.components += m0 * N * Vt * Vt.transpose();
    return T;
}

}  // namespace emdk
