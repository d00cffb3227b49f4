#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "emdk/exterior.hpp"
#include "emdk/fields.hpp"

namespace emdk {

// ============================================================================
// Constitutive tensor
// ============================================================================

/// Components of a 2-form in the ordered basis (01,02,03,23,31,12).
Vector6 to_bivector_basis(const PForm& F);
PForm from_bivector_basis(const Vector6& v);

/// Signed permutation P with lex = P * bivector (P is orthogonal).
Matrix6 bivector_to_lex();

/// Linear map G = Z(F) on 2-forms; the 6x6 matrix uses the (01,02,03,23,31,12) basis.
class ConstitutiveZ {
public:
    ConstitutiveZ() : m_(Matrix6::Identity()) {}
    explicit ConstitutiveZ(const Matrix6& bivector_matrix) : m_(bivector_matrix) {}

    static ConstitutiveZ identity() { return ConstitutiveZ(); }
    /// From a matrix acting on lexicographic 2-form components (01,02,03,12,13,23).
    static ConstitutiveZ from_lex(const Eigen::MatrixXd& lex);

    const Matrix6& matrix() const { return m_; }
    /// Matrix acting on the PForm storage order.
    Matrix6 lex_matrix() const;

    PForm operator()(const PForm& F) const;

    double frobenius_norm() const { return m_.norm(); }

private:
    Matrix6 m_;
};

/// The same medium described in the frame X'_a = X_b L^b_a.
ConstitutiveZ to_frame(const ConstitutiveZ& Z, const Matrix4& L);

// ============================================================================
// Adjoints and the zeta blocks
// ============================================================================

/// Adjoint of a linear map on p-forms: a ^ *T(b) = b ^ *T^dagger(a), p in 1..3.
Eigen::MatrixXd adjoint(const Eigen::MatrixXd& T, int degree);

/// Adjoint of a linear map on 1-forms: eta M^T eta.
Matrix4 adjoint1(const Matrix4& M);

/// pi_V = Id + V~ (x) V acting on 1-form components.
Matrix4 projector(const Velocity& V);

/// Apply a 1-form map.
PForm apply1(const Matrix4& M, const PForm& a);

/// The four spatial maps relative to V.
struct ZetaBlocks {
    Matrix4 zde = Matrix4::Zero();
    Matrix4 zdb = Matrix4::Zero();
    Matrix4 zhe = Matrix4::Zero();
    Matrix4 zhb = Matrix4::Zero();
    Velocity V;
};

/// Largest violation of spatiality (zeta(V~) = 0, i_V zeta = 0) over the four blocks.
double zeta_spatial_violation(const ZetaBlocks& z);

/// Largest violation of zde^+ = zde, zhb^+ = zhb, zdb^+ = -zhe.
double zeta_adjoint_violation(const ZetaBlocks& z);

/// Embed a 3x3 map given in the rest frame of a medium with rapidity w into a 1-form map
/// spatial with respect to the medium velocity.
Matrix4 spatial_map(const Eigen::Matrix3d& rest_frame_map, const Eigen::Vector3d& rapidity);

ConstitutiveZ build_isotropic(double eps, double mu, const Velocity& V);
ConstitutiveZ build_anisotropic(const Matrix4& eps, const Matrix4& mu_inv, const Velocity& V);
ConstitutiveZ build_from_zeta(const ZetaBlocks& z);
/// As above; with require_adjoint_relations = false any spatial blocks are accepted
/// (the result is then not self-adjoint in general).
ConstitutiveZ build_from_zeta(const ZetaBlocks& z, bool require_adjoint_relations);
ZetaBlocks extract_zeta(const ConstitutiveZ& Z, const Velocity& V);

/// Medium whose comoving zeta^db is (i_1 xi) e^1 - (i_2 xi) e^2 up to the orientation sign:
/// Z(F) = F_23 e^01 + F_13 e^02 - F_02 e^13 - F_01 e^23 (lexicographic components).
ConstitutiveZ intrinsic_example();

struct AdjointCheck {
    bool self_adjoint = false;
    double max_violation = 0.0;
};

AdjointCheck is_self_adjoint(const ConstitutiveZ& Z, double tol = 1e-12);

// ============================================================================
// Invariants
// ============================================================================

struct CountOptions {
    bool self_adjoint = true;
    /// also impose zeta^db = zeta^he = 0 relative to V
    bool no_magnetoelectric = false;
    Velocity V;
};

/// Dimension of the space of Z satisfying the requested linear constraints (rank computation).
int count_free_components(const CountOptions& options = {});

/// chi = i_a i_b *(Z(e^a ^ e^b)), summed over all a, b.
double post_invariant(const ConstitutiveZ& Z);

/// chi = 4 i_a zeta^db(e^a) for the given V.
double post_invariant_zeta(const ConstitutiveZ& Z, const Velocity& V);

// ============================================================================
// Intrinsic magneto-electric classification
// ============================================================================

enum class Verdict { NotIntrinsic, Intrinsic, Undecided };

std::string to_string(Verdict v);

struct ClassifyOptions {
    /// NOT_INTRINSIC iff min f < tol * |Z|_F^2
    double tol = 1e-10;
    int max_iterations = 500;
    std::uint64_t seed = 0;
    /// half-width of the seeded offset applied to the non-central grid starts
    double jitter = 0.05;
    bool parallel = true;
};

struct RestartDiagnostics {
    Eigen::Vector3d start;
    Eigen::Vector3d best_rapidity;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct ClassifyResult {
    Verdict verdict = Verdict::Undecided;
    Eigen::Vector3d best_rapidity = Eigen::Vector3d::Zero();
    Vector4 best_V = Vector4(1, 0, 0, 0);
    /// smallest f observed over all restarts
    double residual = 0.0;
    double threshold = 0.0;
    int best_restart = 0;
    std::vector<RestartDiagnostics> restarts;
};

/// f(w) = |zeta^db(V(w))|_F^2.
double magnetoelectric_objective(const ConstitutiveZ& Z, const Eigen::Vector3d& rapidity);

ClassifyResult classify_intrinsic(const ConstitutiveZ& Z, const ClassifyOptions& options = {});

}  // namespace emdk
