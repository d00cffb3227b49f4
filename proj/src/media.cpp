#include "emdk/media.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include "emdk/errors.hpp"
#include "emdk/optimize.hpp"

namespace emdk {

// ============================================================================
// Basis conversion
// ============================================================================

Matrix6 bivector_to_lex() {
    // bivector order 01,02,03,23,31,12 -> lexicographic 01,02,03,12,13,23
    Matrix6 P = Matrix6::Zero();
    P(0, 0) = 1.0;   // 01
    P(1, 1) = 1.0;   // 02
    P(2, 2) = 1.0;   // 03
    P(5, 3) = 1.0;   // 23
    P(4, 4) = -1.0;  // 31 = -13
    P(3, 5) = 1.0;   // 12
    return P;
}

Vector6 to_bivector_basis(const PForm& F) {
    if (F.degree() != 2) throw ValidationError("bivector components need a 2-form");
    return bivector_to_lex().transpose() * F.vec();
}

PForm from_bivector_basis(const Vector6& v) { return PForm::from_vec(2, bivector_to_lex() * v); }

ConstitutiveZ ConstitutiveZ::from_lex(const Eigen::MatrixXd& lex) {
    if (lex.rows() != 6 || lex.cols() != 6) throw ValidationError("constitutive matrix must be 6x6");
    const Matrix6 P = bivector_to_lex();
    return ConstitutiveZ(P.transpose() * lex * P);
}

Matrix6 ConstitutiveZ::lex_matrix() const {
    const Matrix6 P = bivector_to_lex();
    return P * m_ * P.transpose();
}

PForm ConstitutiveZ::operator()(const PForm& F) const {
    if (F.degree() != 2) throw ValidationError("constitutive map acts on 2-forms");
    return PForm::from_vec(2, lex_matrix() * F.vec());
}

ConstitutiveZ to_frame(const ConstitutiveZ& Z, const Matrix4& L) {
    const Eigen::MatrixXd C = compound_matrix(L, 2);
    const Eigen::MatrixXd Ct = C.transpose();
    return ConstitutiveZ::from_lex(Ct * Z.lex_matrix() * Ct.inverse());
}

// ============================================================================
// Adjoints, projector, zeta blocks
// ============================================================================

Eigen::MatrixXd adjoint(const Eigen::MatrixXd& T, int degree) {
    if (degree < 1 || degree > 3) throw ValidationError("adjoint is defined for degrees 1..3");
    if (T.rows() != kFormSize[degree] || T.cols() != kFormSize[degree])
        throw ValidationError("linear map size does not match the degree");
    const Eigen::MatrixXd K = gram_matrix(degree);
    return K.inverse() * T.transpose() * K;
}

Matrix4 adjoint1(const Matrix4& M) {
    const Matrix4 eta = eta_matrix();
    return eta * M.transpose() * eta;
}

Matrix4 projector(const Velocity& V) {
    return Matrix4::Identity() + V.dual().as_vector4() * V.vec().transpose();
}

PForm apply1(const Matrix4& M, const PForm& a) {
    if (a.degree() != 1) throw ValidationError("1-form map applied to a form of degree " + std::to_string(a.degree()));
    return PForm::one_form(M * a.as_vector4());
}

namespace {

double block_scale(const ZetaBlocks& z) {
    return std::max({1.0, z.zde.cwiseAbs().maxCoeff(), z.zdb.cwiseAbs().maxCoeff(), z.zhe.cwiseAbs().maxCoeff(),
                     z.zhb.cwiseAbs().maxCoeff()});
}

Matrix4 zdb_matrix(const ConstitutiveZ& Z, const Velocity& V) {
    const Vector4& v = V.vec();
    const PForm Vt = V.dual();
    Matrix4 M;
    for (int j = 0; j < 4; ++j) {
        const PForm xi = PForm::basis({j});
        M.col(j) = (-interior(v, Z(hodge(wedge(xi, Vt))))).as_vector4();
    }
    return M;
}

}  // namespace

double zeta_spatial_violation(const ZetaBlocks& z) {
    const Vector4 Vt = z.V.dual().as_vector4();
    const Vector4& v = z.V.vec();
    double worst = 0.0;
    for (const Matrix4* M : {&z.zde, &z.zdb, &z.zhe, &z.zhb}) {
        worst = std::max(worst, (*M * Vt).cwiseAbs().maxCoeff());
        worst = std::max(worst, (v.transpose() * *M).cwiseAbs().maxCoeff());
    }
    return worst;
}

double zeta_adjoint_violation(const ZetaBlocks& z) {
    return std::max({(adjoint1(z.zde) - z.zde).cwiseAbs().maxCoeff(), (adjoint1(z.zhb) - z.zhb).cwiseAbs().maxCoeff(),
                     (adjoint1(z.zdb) + z.zhe).cwiseAbs().maxCoeff()});
}

Matrix4 spatial_map(const Eigen::Matrix3d& rest_frame_map, const Eigen::Vector3d& rapidity) {
    Matrix4 M = Matrix4::Zero();
    M.block<3, 3>(1, 1) = rest_frame_map;
    const Matrix4 B = boost_matrix(rapidity);
    return B.transpose().inverse() * M * B.transpose();
}

ConstitutiveZ build_isotropic(double eps, double mu, const Velocity& V) {
    if (!std::isfinite(eps) || !std::isfinite(mu)) throw ValidationError("eps and mu must be finite");
    if (mu == 0.0) throw ValidationError("mu must be nonzero");
    const Vector4& v = V.vec();
    const PForm Vt = V.dual();
    return ConstitutiveZ::from_lex(matrix_of(2, [&](const PForm& F) {
        return wedge(interior(v, F), Vt) * (eps - 1.0 / mu) + F * (1.0 / mu);
    }));
}

ConstitutiveZ build_from_zeta(const ZetaBlocks& z, bool require_adjoint_relations) {
    const double scale = block_scale(z);
    const double spatial = zeta_spatial_violation(z);
    if (spatial > 1e-10 * scale) {
        std::ostringstream os;
        os << "zeta blocks are not spatial with respect to V (violation " << spatial << ")";
        throw ValidationError(os.str());
    }
    if (require_adjoint_relations) {
        const double adj = zeta_adjoint_violation(z);
        if (adj > 1e-10 * scale) {
            std::ostringstream os;
            os << "zeta blocks violate the adjoint relations (violation " << adj << ")";
            throw ValidationError(os.str());
        }
    }
    const Vector4& v = z.V.vec();
    const PForm Vt = z.V.dual();
    return ConstitutiveZ::from_lex(matrix_of(2, [&](const PForm& F) {
        const PForm e = interior(v, F);
        const PForm b = interior(v, hodge(F));
        return wedge(apply1(z.zde, e), Vt) + wedge(apply1(z.zdb, b), Vt) - hodge(wedge(apply1(z.zhe, e), Vt)) -
               hodge(wedge(apply1(z.zhb, b), Vt));
    }));
}

ConstitutiveZ build_from_zeta(const ZetaBlocks& z) { return build_from_zeta(z, true); }

ConstitutiveZ build_anisotropic(const Matrix4& eps, const Matrix4& mu_inv, const Velocity& V) {
    ZetaBlocks z;
    z.zde = eps;
    z.zhb = mu_inv;
    z.V = V;
    return build_from_zeta(z, true);
}

ZetaBlocks extract_zeta(const ConstitutiveZ& Z, const Velocity& V) {
    ZetaBlocks z;
    z.V = V;
    const Vector4& v = V.vec();
    const PForm Vt = V.dual();
    for (int j = 0; j < 4; ++j) {
        const PForm xi = PForm::basis({j});
        const PForm ZxV = Z(wedge(xi, Vt));
        const PForm ZsxV = Z(hodge(wedge(xi, Vt)));
        z.zde.col(j) = interior(v, ZxV).as_vector4();
        z.zdb.col(j) = (-interior(v, ZsxV)).as_vector4();
        z.zhe.col(j) = interior(v, hodge(ZxV)).as_vector4();
        z.zhb.col(j) = (-interior(v, hodge(ZsxV))).as_vector4();
    }
    return z;
}

ConstitutiveZ intrinsic_example() {
    Matrix6 lex = Matrix6::Zero();
    // lexicographic positions: 01->0, 02->1, 03->2, 12->3, 13->4, 23->5
    lex(0, 5) = 1.0;   // F_23 e^01
    lex(1, 4) = 1.0;   // F_13 e^02
    lex(4, 1) = -1.0;  // -F_02 e^13
    lex(5, 0) = -1.0;  // -F_01 e^23
    return ConstitutiveZ::from_lex(lex);
}

AdjointCheck is_self_adjoint(const ConstitutiveZ& Z, double tol) {
    const Matrix6 lex = Z.lex_matrix();
    const double violation = (lex - adjoint(lex, 2)).cwiseAbs().maxCoeff();
    return {violation <= tol * std::max(1.0, lex.cwiseAbs().maxCoeff()), violation};
}

// ============================================================================
// Invariants
// ============================================================================

int count_free_components(const CountOptions& options) {
    // Each unknown is one entry of the 6x6 lexicographic matrix; constraints are stacked rows.
    std::vector<Eigen::VectorXd> columns;
    for (int k = 0; k < 36; ++k) {
        Matrix6 unit = Matrix6::Zero();
        unit(k / 6, k % 6) = 1.0;
        std::vector<double> residuals;
        if (options.self_adjoint) {
            const Matrix6 r = unit - adjoint(unit, 2);
            residuals.insert(residuals.end(), r.data(), r.data() + 36);
        }
        if (options.no_magnetoelectric) {
            const ZetaBlocks z = extract_zeta(ConstitutiveZ::from_lex(unit), options.V);
            residuals.insert(residuals.end(), z.zdb.data(), z.zdb.data() + 16);
            residuals.insert(residuals.end(), z.zhe.data(), z.zhe.data() + 16);
        }
        columns.push_back(Eigen::Map<Eigen::VectorXd>(residuals.data(), static_cast<Eigen::Index>(residuals.size())));
    }
    if (columns.front().size() == 0) return 36;
    Eigen::MatrixXd C(columns.front().size(), 36);
    for (int k = 0; k < 36; ++k) C.col(k) = columns[static_cast<std::size_t>(k)];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
    lu.setThreshold(1e-10);
    return 36 - static_cast<int>(lu.rank());
}

double post_invariant(const ConstitutiveZ& Z) {
    double chi = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            chi += interior(a, interior(b, hodge(Z(PForm::basis({a, b})))))[0];
        }
    return chi;
}

double post_invariant_zeta(const ConstitutiveZ& Z, const Velocity& V) { return 4.0 * zdb_matrix(Z, V).trace(); }

// ============================================================================
// Classification
// ============================================================================

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::NotIntrinsic: return "NOT_INTRINSIC";
        case Verdict::Intrinsic: return "INTRINSIC";
        case Verdict::Undecided: return "UNDECIDED";
    }
    return "UNDECIDED";
}

double magnetoelectric_objective(const ConstitutiveZ& Z, const Eigen::Vector3d& rapidity) {
    const Vector4 v = velocity_from_rapidity(rapidity);
    if (!v.allFinite()) return std::numeric_limits<double>::infinity();
    return zdb_matrix(Z, Velocity(v, 1e-6)).squaredNorm();
}

namespace {

RestartDiagnostics run_restart(const ConstitutiveZ& Z, const Eigen::Vector3d& start, int max_iterations) {
    const auto objective = [&Z](const Eigen::VectorXd& w) {
        return magnetoelectric_objective(Z, Eigen::Vector3d(w[0], w[1], w[2]));
    };
    NelderMeadOptions opt;
    opt.max_iterations = max_iterations;
    opt.initial_step = 0.5;
    NelderMeadResult first = nelder_mead(objective, Eigen::VectorXd(start), opt);
    // restart the simplex once around the best point; guards against premature collapse
    opt.initial_step = 1e-2;
    NelderMeadResult polish = nelder_mead(objective, first.x, opt);
    const NelderMeadResult& best = polish.f <= first.f ? polish : first;

    RestartDiagnostics d;
    d.start = start;
    d.best_rapidity = Eigen::Vector3d(best.x[0], best.x[1], best.x[2]);
    d.f = best.f;
    d.iterations = first.iterations + polish.iterations;
    d.converged = polish.converged;
    return d;
}

}  // namespace

ClassifyResult classify_intrinsic(const ConstitutiveZ& Z, const ClassifyOptions& options) {
    const AdjointCheck sa = is_self_adjoint(Z, 1e-10);
    if (!sa.self_adjoint) {
        std::ostringstream os;
        os << "classification requires a self-adjoint constitutive tensor (violation " << sa.max_violation << ")";
        throw ValidationError(os.str());
    }
    if (!(options.tol > 0.0) || options.max_iterations <= 0) throw ValidationError("invalid classifier options");

    // Restart 0 is the global rest frame; the remaining 26 grid points get a seeded offset.
    std::vector<Eigen::Vector3d> starts{Eigen::Vector3d::Zero()};
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> jitter(-options.jitter, options.jitter);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                if (i == 1 && j == 1 && k == 1) continue;
                Eigen::Vector3d w(-2.0 + 2.0 * i, -2.0 + 2.0 * j, -2.0 + 2.0 * k);
                for (int c = 0; c < 3; ++c) w[c] += options.jitter > 0.0 ? jitter(rng) : 0.0;
                starts.push_back(w);
            }

    ClassifyResult result;
    result.restarts.resize(starts.size());
    if (options.parallel) {
        std::vector<std::future<RestartDiagnostics>> jobs;
        for (const auto& s : starts)
            jobs.push_back(std::async(std::launch::async, run_restart, std::cref(Z), s, options.max_iterations));
        for (std::size_t i = 0; i < jobs.size(); ++i) result.restarts[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < starts.size(); ++i)
            result.restarts[i] = run_restart(Z, starts[i], options.max_iterations);
    }

    // deterministic merge: strict improvement only, so the lowest index wins ties
    std::size_t best = 0;
    bool any_converged = false;
    for (std::size_t i = 0; i < result.restarts.size(); ++i) {
        if (result.restarts[i].f < result.restarts[best].f) best = i;
        any_converged = any_converged || result.restarts[i].converged;
    }
    result.best_restart = static_cast<int>(best);
    result.best_rapidity = result.restarts[best].best_rapidity;
    result.best_V = velocity_from_rapidity(result.best_rapidity);
    result.residual = result.restarts[best].f;
    result.threshold = options.tol * Z.frobenius_norm() * Z.frobenius_norm();
    if (result.residual < result.threshold)
        result.verdict = Verdict::NotIntrinsic;
    else
        result.verdict = any_converged ? Verdict::Intrinsic : Verdict::Undecided;
    return result;
}

}  // namespace emdk
