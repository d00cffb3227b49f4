#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "emdk/errors.hpp"

namespace emdk {

// ============================================================================
// Conventions
// ============================================================================

/// Spacetime dimension. Everything in the library is hard-wired to four.
inline constexpr int kDim = 4;

/// Number of components of a p-form, C(4,p).
inline constexpr std::array<int, 5> kFormSize{1, 4, 6, 4, 1};

/// Diagonal of the orthonormal-frame metric, signature (-,+,+,+).
inline constexpr std::array<double, 4> kEta{-1.0, 1.0, 1.0, 1.0};

/// Orientation sign: the positive volume form is kOrientation * e^0^e^1^e^2^e^3.
/// With -1 the positive volume is e^1^e^2^e^3^e^0, which is the orientation
/// under which the comoving Poynting form reads -(E x H).dx.
inline constexpr int kOrientation = -1;

/// Global constant kappa in eps_{abef} eps^{abcd} = kappa (d^d_e d^c_f - d^c_e d^d_f).
inline constexpr double kEpsilonContractionConstant = 2.0;

using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

/// Minkowski metric as a 4x4 matrix.
Matrix4 eta_matrix();

/// Description of the convention baked into the library, used in report provenance.
std::string orientation_description();

// ============================================================================
// Basis bookkeeping
// ============================================================================

/// Multi-indices are stored as 4-bit masks (bit a set <=> e^a present).
/// basis_mask(p, k) is the mask of the k-th strictly increasing multi-index of degree p
/// in lexicographic order, e.g. degree 2: 01,02,03,12,13,23.
std::uint8_t basis_mask(int degree, int k);

/// Inverse of basis_mask: position of a mask within its degree.
int basis_index(std::uint8_t mask);

/// Human readable label of a basis element, e.g. "013".
std::string basis_label(int degree, int k);

// ============================================================================
// PForm
// ============================================================================

/// Antisymmetric degree-p form in the fixed orthonormal coframe, stored densely over
/// the strictly increasing multi-indices.
class PForm {
public:
    PForm() = default;
    explicit PForm(int degree);

    static PForm zero(int degree) { return PForm(degree); }
    static PForm scalar(double value);
    /// e^{i0} ^ e^{i1} ^ ... for arbitrary (possibly unsorted or repeated) indices.
    static PForm basis(std::initializer_list<int> indices);
    static PForm one_form(const Vector4& components);
    /// Result of wedging past the top degree: an identically zero 4-form flagged degenerate.
    static PForm degenerate_zero();

    int degree() const { return degree_; }
    bool degenerate() const { return degenerate_; }
    std::size_t size() const { return static_cast<std::size_t>(kFormSize[degree_]); }

    double operator[](std::size_t k) const { return c_[k]; }
    double& operator[](std::size_t k) { return c_[k]; }
    std::span<const double> components() const { return {c_.data(), size()}; }

    /// Component on an arbitrary multi-index, with the permutation sign applied.
    double component(std::initializer_list<int> indices) const;

    /// Components as a dynamic Eigen vector (size C(4,p)).
    Eigen::VectorXd vec() const;
    static PForm from_vec(int degree, const Eigen::VectorXd& v);
    /// 1-form components as a 4-vector (degree must be 1).
    Vector4 as_vector4() const;

    double max_abs() const;
    double norm() const;

    PForm& operator+=(const PForm& o);
    PForm& operator-=(const PForm& o);
    PForm& operator*=(double s);

    friend PForm operator+(PForm a, const PForm& b) { return a += b; }
    friend PForm operator-(PForm a, const PForm& b) { return a -= b; }
    friend PForm operator*(PForm a, double s) { return a *= s; }
    friend PForm operator*(double s, PForm a) { return a *= s; }
    friend PForm operator-(PForm a) { return a *= -1.0; }

private:
    int degree_ = 0;
    bool degenerate_ = false;
    std::array<double, 6> c_{};
};

/// Max-abs difference of two forms of equal degree.
double max_abs_diff(const PForm& a, const PForm& b);

// ============================================================================
// Algebra
// ============================================================================

/// Exterior product. Past degree 4 the result is PForm::degenerate_zero().
PForm wedge(const PForm& a, const PForm& b);

/// Interior contraction i_X a. On 0-forms returns the zero 0-form.
PForm interior(const Vector4& X, const PForm& a);

/// Interior contraction with the frame vector X_a.
PForm interior(int a, const PForm& form);

/// X~ = g(X, -).
PForm metric_dual_vec(const Vector4& X);

/// Inverse of metric_dual_vec on 1-forms.
Vector4 metric_dual_form(const PForm& a);

/// Hodge star, fixed by a ^ *b = <a,b> vol with vol = *1.
PForm hodge(const PForm& a);

/// Hodge star with an explicit orientation sign and signature sign; signature_sign = -1
/// uses diag(+1,-1,-1,-1). Used by the self-test to inject convention errors.
PForm hodge_with(const PForm& a, int orientation, int signature_sign);

/// Matrix of the Hodge star on p-forms (maps degree p components to degree 4-p).
Eigen::MatrixXd hodge_matrix(int degree);

/// Metric inner product <a,b> of two forms of the same degree (eta on all indices).
double inner(const PForm& a, const PForm& b);

/// Gram matrix of <,> on the p-form basis.
Eigen::MatrixXd gram_matrix(int degree);

/// Positive volume form *1.
PForm volume_form();

/// Coefficient of a 4-form relative to the positive volume form.
double volume_coefficient(const PForm& top);

/// Levi-Civita tensor eps_{abcd}: components of the positive volume form *1 (indices down).
double levi_civita(int a, int b, int c, int d);

/// eps_{abef} eps^{abcd}, indexed [e][f][c][d].
using Rank4 = std::array<std::array<std::array<std::array<double, 4>, 4>, 4>, 4>;
Rank4 epsilon_contract();

/// eps_{abcd} eps^{abcd}.
double epsilon_full_contraction();

// ============================================================================
// Linear maps between forms
// ============================================================================

/// p-th compound matrix: entries det(M[I,J]) over increasing multi-indices I,J.
Eigen::MatrixXd compound_matrix(const Matrix4& M, int degree);

/// Apply a square C(4,p) x C(4,p) matrix to a p-form (degree preserved).
PForm apply(const Eigen::MatrixXd& T, const PForm& a);

/// Matrix of a linear map on p-forms assembled from its action on basis elements.
template <class F>
Eigen::MatrixXd matrix_of(int degree, F&& map) {
    const int n = kFormSize[degree];
    Eigen::MatrixXd T(n, n);
    for (int j = 0; j < n; ++j) {
        PForm b(degree);
        b[static_cast<std::size_t>(j)] = 1.0;
        T.col(j) = map(b).vec();
    }
    return T;
}

// ============================================================================
// Lorentz transformations
// ============================================================================

/// Unit future-pointing velocity from a rapidity vector: (cosh|w|, sinh|w| w/|w|).
Vector4 velocity_from_rapidity(const Eigen::Vector3d& w);

/// Rapidity vector of a unit future-pointing velocity (inverse of the above).
Eigen::Vector3d rapidity_from_velocity(const Vector4& V);

/// Pure boost taking X_0 to velocity_from_rapidity(w) (acts on vector components).
Matrix4 boost_matrix(const Eigen::Vector3d& w);

/// Spatial rotation about axis by angle (acts on vector components).
Matrix4 rotation_matrix(const Eigen::Vector3d& axis, double angle);

/// Components of a p-form in the frame X'_a = X_b L^b_a: C_p(L)^T a.
PForm to_frame(const PForm& a, const Matrix4& L);

}  // namespace emdk
