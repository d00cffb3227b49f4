#pragma once

#include <array>

#include "emdk/exterior.hpp"
#include "emdk/fields.hpp"
#include "emdk/media.hpp"
#include "emdk/sem.hpp"

namespace emdk {

// ============================================================================
// Coframe variations
// ============================================================================

/// One-parameter coframe family e^a_t = e^a + t edot^a. Row a of `E` holds the components
/// of edot^a, so e_t = A e with A = I + t E.
struct CoframeVariation {
    Matrix4 E = Matrix4::Zero();

    static CoframeVariation from_forms(const std::array<PForm, 4>& edot);

    PForm edot(int a) const;
    /// gdot_ab = i_b edot_a + i_a edot_b with edot_a = eta_ac edot^c.
    Matrix4 gdot() const;
    /// lambda = edot^a(V) V_a, so that d/dt V_t = lambda V at t = 0.
    double lambda(const Velocity& V) const;
};

/// Lifted metric quantities at parameter t, expressed in the fixed (t = 0) basis.
class LiftedState {
public:
    /// Throws NumericalError when g_t is not Lorentzian.
    LiftedState(const CoframeVariation& var, const Velocity& V, double t);

    double t() const { return t_; }
    const Matrix4& A() const { return A_; }
    /// g_t components g_t(X_a, X_b) = (A^T eta A)_ab.
    const Matrix4& metric() const { return g_; }
    const Matrix4& metric_inverse() const { return g_inv_; }
    /// V_t = V / sqrt(-g_t(V,V)).
    const Vector4& V() const { return V_t_; }
    /// g_t(V_t, -) as a 1-form.
    PForm V_dual() const { return PForm::one_form(V_dual_); }
    /// pi_t = Id + V~_t (x) V_t on 1-form components.
    const Matrix4& projector() const { return pi_t_; }

    /// Hodge star of g_t with the orientation carried along the family.
    PForm hodge(const PForm& a) const;

private:
    double t_;
    Matrix4 A_, g_, g_inv_;
    Vector4 V_t_, V_dual_;
    Matrix4 pi_t_;
    std::array<Eigen::MatrixXd, 5> star_;
};

PForm hodge_t(const LiftedState& state, const PForm& a);

/// *dot a = edot^c ^ i_c *a - *(edot^c ^ i_c a).
PForm hodge_dot(const CoframeVariation& var, const PForm& a);

/// zeta blocks at parameter t (spatial with respect to V_t and adjoint-related with respect to g_t).
struct LiftedZeta {
    Matrix4 zde, zdb, zhe, zhb;
};

/// i_X zeta_t(a) = 1/2 (i_X zeta_0(pi_t a) +/- i_{g_t^-1 a} zeta'_0(pi_t g_t X)) with zeta' the
/// adjoint partner (de <-> de, hb <-> hb, db <-> -he).
LiftedZeta zeta_lift(const ZetaBlocks& z0, const LiftedState& state);

/// Largest violation of the lift conditions at the state's t:
/// spatiality w.r.t. V_t and the g_t-adjoint relations.
double lift_condition_violation(const LiftedZeta& z, const LiftedState& state);

// ============================================================================
// Action density and its variation
// ============================================================================

/// Lambda_t = -1/2 [F ^ *_t(zde(e_t) ^ V~_t) + F ^ *_t(zdb(b_t) ^ V~_t)
///                  + F ^ zhe(e_t) ^ V~_t + F ^ zhb(b_t) ^ V~_t]
/// with e_t = i_{V_t} F, b_t = i_{V_t} *_t F and the t = 0 blocks. At t = 0 this is
/// -1/2 F ^ *Z(F).
PForm action_density(const LiftedState& state, const ZetaBlocks& z0, const PForm& F);

/// The same density evaluated with the lifted blocks zeta_t.
PForm action_density_lifted(const LiftedState& state, const ZetaBlocks& z0, const PForm& F);

struct VariationCheck {
    /// d Lambda_t / dt at t = 0 (volume coefficient), finite differences
    double lhs = 0.0;
    /// edot^a ^ tau_a (volume coefficient), Abraham drive forms
    double rhs = 0.0;
    double residual = 0.0;
};

/// Default finite-difference step for the variational derivative.
inline constexpr double kVariationStep = 1e-5;

/// Central finite-difference derivative (4-point stencil) of Lambda_t at t = 0.
double action_derivative(const ZetaBlocks& z0, const PForm& F, const CoframeVariation& var,
                         double h = kVariationStep);

VariationCheck verify_variation(const ZetaBlocks& z0, const PForm& F, const CoframeVariation& var,
                                double h = kVariationStep);

/// T_ab from 16 probes edot^a = e^b: T_ab = eta^bb (d Lambda/dt) / vol.
SemTensor tensor_from_metric_variation(const ZetaBlocks& z0, const PForm& F, double h = kVariationStep,
                                       bool parallel = true);

}  // namespace emdk
