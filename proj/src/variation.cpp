#include "emdk/variation.hpp"

#include <cmath>
#include <future>
#include <sstream>

#include "emdk/errors.hpp"

namespace emdk {

// ============================================================================
// CoframeVariation
// ============================================================================

CoframeVariation CoframeVariation::from_forms(const std::array<PForm, 4>& edot) {
    CoframeVariation v;
    for (int a = 0; a < 4; ++a) v.E.row(a) = edot[static_cast<std::size_t>(a)].as_vector4().transpose();
    return v;
}

PForm CoframeVariation::edot(int a) const { return PForm::one_form(E.row(a).transpose()); }

Matrix4 CoframeVariation::gdot() const {
    const Matrix4 etaE = eta_matrix() * E;
    return etaE + etaE.transpose();
}

double CoframeVariation::lambda(const Velocity& V) const {
    const Vector4 EV = E * V.vec();
    double l = 0.0;
    for (int a = 0; a < 4; ++a) l += EV[a] * kEta[a] * V[a];
    return l;
}

// ============================================================================
// LiftedState
// ============================================================================

LiftedState::LiftedState(const CoframeVariation& var, const Velocity& V, double t) : t_(t) {
    A_ = Matrix4::Identity() + t * var.E;
    g_ = A_.transpose() * eta_matrix() * A_;
    const Eigen::SelfAdjointEigenSolver<Matrix4> eig(g_);
    int negative = 0, positive = 0;
    const double floor = 1e-12 * eig.eigenvalues().cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i) {
        if (eig.eigenvalues()[i] < -floor) ++negative;
        if (eig.eigenvalues()[i] > floor) ++positive;
    }
    if (negative != 1 || positive != 3 || !(A_.determinant() > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "lifted metric is not Lorentzian (or the coframe flips orientation) at t = " << t;
        throw NumericalError(os.str());
    }
    g_inv_ = g_.inverse();
    const double n = -V.vec().dot(g_ * V.vec());
    if (!(n > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "medium velocity is not timelike for the lifted metric at t = " << t;
        throw NumericalError(os.str());
    }
    V_t_ = V.vec() / std::sqrt(n);
    V_dual_ = g_ * V_t_;
    pi_t_ = Matrix4::Identity() + V_dual_ * V_t_.transpose();
    for (int p = 0; p <= 4; ++p) {
        const Eigen::MatrixXd Cp = compound_matrix(A_, p);
        const Eigen::MatrixXd Cq = compound_matrix(A_, 4 - p);
        star_[static_cast<std::size_t>(p)] = Cq.transpose() * hodge_matrix(p) * Cp.transpose().inverse();
    }
}

PForm LiftedState::hodge(const PForm& a) const {
    return PForm::from_vec(4 - a.degree(), star_[static_cast<std::size_t>(a.degree())] * a.vec());
}

PForm hodge_t(const LiftedState& state, const PForm& a) { return state.hodge(a); }

PForm hodge_dot(const CoframeVariation& var, const PForm& a) {
    const PForm sa = hodge(a);
    PForm first(4 - a.degree());
    PForm inner_sum(a.degree());
    for (int c = 0; c < 4; ++c) {
        const PForm ec = var.edot(c);
        if (sa.degree() > 0) first += wedge(ec, interior(c, sa));
        if (a.degree() > 0) inner_sum += wedge(ec, interior(c, a));
    }
    return first - hodge(inner_sum);
}

// ============================================================================
// Lifted zeta blocks
// ============================================================================

LiftedZeta zeta_lift(const ZetaBlocks& z0, const LiftedState& state) {
    const Matrix4& P = state.projector();
    const Matrix4& G = state.metric();
    const Matrix4& Gi = state.metric_inverse();
    const auto lift = [&](const Matrix4& M, const Matrix4& partner) {
        return Matrix4(0.5 * (M * P + G * P.transpose() * partner.transpose() * Gi));
    };
    LiftedZeta z;
    z.zde = lift(z0.zde, z0.zde);
    z.zhb = lift(z0.zhb, z0.zhb);
    z.zdb = lift(z0.zdb, -z0.zhe);
    z.zhe = lift(z0.zhe, -z0.zdb);
    return z;
}

double lift_condition_violation(const LiftedZeta& z, const LiftedState& state) {
    const Vector4& V = state.V();
    const Vector4 Vt = state.V_dual().as_vector4();
    const Matrix4& G = state.metric();
    const Matrix4& Gi = state.metric_inverse();
    const auto adj = [&](const Matrix4& M) { return Matrix4(G * M.transpose() * Gi); };
    double worst = 0.0;
    for (const Matrix4* M : {&z.zde, &z.zdb, &z.zhe, &z.zhb}) {
        worst = std::max(worst, (*M * Vt).cwiseAbs().maxCoeff());
        worst = std::max(worst, (V.transpose() * *M).cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, (adj(z.zde) - z.zde).cwiseAbs().maxCoeff());
    worst = std::max(worst, (adj(z.zhb) - z.zhb).cwiseAbs().maxCoeff());
    worst = std::max(worst, (adj(z.zdb) + z.zhe).cwiseAbs().maxCoeff());
    return worst;
}

// ============================================================================
// Action density
// ============================================================================

namespace {

PForm action_with_blocks(const LiftedState& s, const Matrix4& zde, const Matrix4& zdb, const Matrix4& zhe,
                         const Matrix4& zhb, const PForm& F) {
    if (F.degree() != 2) throw ValidationError("action density needs a 2-form field strength");
    const PForm Vt = s.V_dual();
    const PForm e = interior(s.V(), F);
    const PForm b = interior(s.V(), s.hodge(F));
    const PForm twice = wedge(F, s.hodge(wedge(apply1(zde, e), Vt))) + wedge(F, s.hodge(wedge(apply1(zdb, b), Vt))) +
                        wedge(F, wedge(apply1(zhe, e), Vt)) + wedge(F, wedge(apply1(zhb, b), Vt));
    return twice * -0.5;
}

double volume_of(const PForm& top) { return volume_coefficient(top); }

}  // namespace

PForm action_density(const LiftedState& state, const ZetaBlocks& z0, const PForm& F) {
    return action_with_blocks(state, z0.zde, z0.zdb, z0.zhe, z0.zhb, F);
}

PForm action_density_lifted(const LiftedState& state, const ZetaBlocks& z0, const PForm& F) {
    const LiftedZeta z = zeta_lift(z0, state);
    return action_with_blocks(state, z.zde, z.zdb, z.zhe, z.zhb, F);
}

double action_derivative(const ZetaBlocks& z0, const PForm& F, const CoframeVariation& var, double h) {
    if (!(h > 0.0)) throw ValidationError("finite-difference step must be positive");
    const double sF = F.max_abs();
    const double sE = var.E.cwiseAbs().maxCoeff();
    if (sF == 0.0 || sE == 0.0) return 0.0;
    const PForm Fn = F * (1.0 / sF);
    CoframeVariation vn;
    vn.E = var.E / sE;
    const auto f = [&](double t) { return volume_of(action_density(LiftedState(vn, z0.V, t), z0, Fn)); };
    const double d = (-f(2.0 * h) + 8.0 * f(h) - 8.0 * f(-h) + f(-2.0 * h)) / (12.0 * h);
    return d * sF * sF * sE;
}

VariationCheck verify_variation(const ZetaBlocks& z0, const PForm& F, const CoframeVariation& var, double h) {
    VariationCheck out;
    out.lhs = action_derivative(z0, F, var, h);
    const DriveForms tau = abraham_drive(F, build_from_zeta(z0), z0.V);
    PForm sum(4);
    for (int a = 0; a < 4; ++a) sum += wedge(var.edot(a), tau[a]);
    out.rhs = volume_of(sum);
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

SemTensor tensor_from_metric_variation(const ZetaBlocks& z0, const PForm& F, double h, bool parallel) {
    const auto probe = [&z0, &F, h](int a, int b) {
        CoframeVariation v;
        v.E(a, b) = 1.0;
        return kEta[b] * action_derivative(z0, F, v, h);
    };
    SemTensor T;
    if (parallel) {
        std::array<std::future<double>, 16> jobs;
        for (int k = 0; k < 16; ++k) jobs[static_cast<std::size_t>(k)] = std::async(std::launch::async, probe, k / 4, k % 4);
        for (int k = 0; k < 16; ++k) T.components(k / 4, k % 4) = jobs[static_cast<std::size_t>(k)].get();
    } else {
        for (int k = 0; k < 16; ++k) T.components(k / 4, k % 4) = probe(k / 4, k % 4);
    }
    return T;
}

}  // namespace emdk
