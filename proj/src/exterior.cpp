#include "emdk/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "emdk/errors.hpp"

namespace emdk {

namespace {

// Strictly increasing multi-indices as bitmasks, lexicographic within each degree.
constexpr std::array<std::array<std::uint8_t, 6>, 5> kMasks{{
    {0b0000},
    {0b0001, 0b0010, 0b0100, 0b1000},
    {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100},
    {0b0111, 0b1011, 0b1101, 0b1110},
    {0b1111},
}};

constexpr std::array<int, 16> make_index_table() {
    std::array<int, 16> t{};
    for (int p = 0; p <= 4; ++p)
        for (int k = 0; k < kFormSize[p]; ++k) t[kMasks[p][k]] = k;
    return t;
}
constexpr std::array<int, 16> kIndexOfMask = make_index_table();

/// Sign of the permutation that sorts the concatenation of two increasing index sets.
int merge_sign(std::uint8_t I, std::uint8_t J) {
    int inversions = 0;
    for (int x = 0; x < 4; ++x) {
        if (!(I & (1u << x))) continue;
        // count y in J with y < x
        inversions += std::popcount(static_cast<unsigned>(J & ((1u << x) - 1u)));
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

void require_degree(int degree) {
    if (degree < 0 || degree > 4) throw ValidationError("form degree must lie in 0..4, got " + std::to_string(degree));
}

}  // namespace

Matrix4 eta_matrix() {
    return Vector4(kEta[0], kEta[1], kEta[2], kEta[3]).asDiagonal();
}

std::string orientation_description() {
    return kOrientation > 0 ? "positive volume e0^e1^e2^e3 (*1 = +e0^e1^e2^e3)"
                            : "positive volume e1^e2^e3^e0 (*1 = -e0^e1^e2^e3)";
}

std::uint8_t basis_mask(int degree, int k) {
    require_degree(degree);
    return kMasks[degree][k];
}

int basis_index(std::uint8_t mask) { return kIndexOfMask[mask & 0xF]; }

std::string basis_label(int degree, int k) {
    std::string s;
    const auto m = basis_mask(degree, k);
    for (int a = 0; a < 4; ++a)
        if (m & (1u << a)) s += static_cast<char>('0' + a);
    return s.empty() ? "1" : s;
}

// ============================================================================
// PForm
// ============================================================================

PForm::PForm(int degree) : degree_(degree) { require_degree(degree); }

PForm PForm::scalar(double value) {
    PForm f(0);
    f.c_[0] = value;
    return f;
}

PForm PForm::basis(std::initializer_list<int> indices) {
    PForm f(static_cast<int>(indices.size()) > 4 ? 4 : static_cast<int>(indices.size()));
    if (indices.size() > 4) {
        f.degenerate_ = true;
        return f;
    }
    std::uint8_t mask = 0;
    int sign = 1;
    for (int a : indices) {
        if (a < 0 || a > 3) throw ValidationError("basis index out of range");
        const std::uint8_t bit = static_cast<std::uint8_t>(1u << a);
        if (mask & bit) return f;  // repeated index: zero form
        // moving e^a left past all already-present larger indices
        if (std::popcount(static_cast<unsigned>(mask & ~((bit << 1) - 1u))) % 2) sign = -sign;
        mask |= bit;
    }
    f.c_[static_cast<std::size_t>(kIndexOfMask[mask])] = sign;
    return f;
}

PForm PForm::one_form(const Vector4& c) {
    PForm f(1);
    for (int a = 0; a < 4; ++a) f.c_[a] = c[a];
    return f;
}

PForm PForm::degenerate_zero() {
    PForm f(4);
    f.degenerate_ = true;
    return f;
}

double PForm::component(std::initializer_list<int> indices) const {
    if (static_cast<int>(indices.size()) != degree_) throw ValidationError("multi-index length does not match form degree");
    const PForm b = basis(indices);
    double v = 0.0;
    for (std::size_t k = 0; k < size(); ++k) v += b.c_[k] * c_[k];
    return v;
}

Eigen::VectorXd PForm::vec() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(size()));
    for (std::size_t k = 0; k < size(); ++k) v[static_cast<Eigen::Index>(k)] = c_[k];
    return v;
}

PForm PForm::from_vec(int degree, const Eigen::VectorXd& v) {
    PForm f(degree);
    if (v.size() != kFormSize[degree]) throw ValidationError("component vector has the wrong length for its degree");
    for (std::size_t k = 0; k < f.size(); ++k) f.c_[k] = v[static_cast<Eigen::Index>(k)];
    return f;
}

Vector4 PForm::as_vector4() const {
    if (degree_ != 1) throw ValidationError("as_vector4 requires a 1-form");
    return {c_[0], c_[1], c_[2], c_[3]};
}

double PForm::max_abs() const {
    double m = 0.0;
    for (std::size_t k = 0; k < size(); ++k) m = std::max(m, std::abs(c_[k]));
    return m;
}

double PForm::norm() const {
    double s = 0.0;
    for (std::size_t k = 0; k < size(); ++k) s += c_[k] * c_[k];
    return std::sqrt(s);
}

PForm& PForm::operator+=(const PForm& o) {
    if (o.degree_ != degree_) throw ValidationError("cannot add forms of different degree");
    for (std::size_t k = 0; k < size(); ++k) c_[k] += o.c_[k];
    degenerate_ = degenerate_ && o.degenerate_;
    return *this;
}

PForm& PForm::operator-=(const PForm& o) {
    if (o.degree_ != degree_) throw ValidationError("cannot subtract forms of different degree");
    for (std::size_t k = 0; k < size(); ++k) c_[k] -= o.c_[k];
    degenerate_ = degenerate_ && o.degenerate_;
    return *this;
}

PForm& PForm::operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
}

double max_abs_diff(const PForm& a, const PForm& b) { return (a - b).max_abs(); }

// ============================================================================
// Algebra
// ============================================================================

PForm wedge(const PForm& a, const PForm& b) {
    const int p = a.degree(), q = b.degree();
    if (p + q > 4) return PForm::degenerate_zero();
    PForm r(p + q);
    for (int i = 0; i < kFormSize[p]; ++i) {
        const double ai = a[static_cast<std::size_t>(i)];
        if (ai == 0.0) continue;
        const auto I = kMasks[p][i];
        for (int j = 0; j < kFormSize[q]; ++j) {
            const auto J = kMasks[q][j];
            if (I & J) continue;
            r[static_cast<std::size_t>(kIndexOfMask[I | J])] += merge_sign(I, J) * ai * b[static_cast<std::size_t>(j)];
        }
    }
    return r;
}

PForm interior(const Vector4& X, const PForm& a) {
    const int p = a.degree();
    if (p == 0) return PForm(0);
    PForm r(p - 1);
    for (int i = 0; i < kFormSize[p]; ++i) {
        const double ai = a[static_cast<std::size_t>(i)];
        if (ai == 0.0) continue;
        const auto I = kMasks[p][i];
        int position = 0;
        for (int mu = 0; mu < 4; ++mu) {
            if (!(I & (1u << mu))) continue;
            const double sign = (position % 2 == 0) ? 1.0 : -1.0;
            r[static_cast<std::size_t>(kIndexOfMask[I & ~(1u << mu)])] += sign * X[mu] * ai;
            ++position;
        }
    }
    return r;
}

PForm interior(int a, const PForm& form) {
    Vector4 X = Vector4::Zero();
    X[a] = 1.0;
    return interior(X, form);
}

PForm metric_dual_vec(const Vector4& X) {
    PForm r(1);
    for (int a = 0; a < 4; ++a) r[static_cast<std::size_t>(a)] = kEta[a] * X[a];
    return r;
}

Vector4 metric_dual_form(const PForm& a) {
    if (a.degree() != 1) throw ValidationError("metric_dual_form requires a 1-form");
    Vector4 X;
    for (int i = 0; i < 4; ++i) X[i] = kEta[i] * a[static_cast<std::size_t>(i)];
    return X;
}

PForm hodge_with(const PForm& a, int orientation, int signature_sign) {
    const int p = a.degree();
    PForm r(4 - p);
    for (int i = 0; i < kFormSize[p]; ++i) {
        const double ai = a[static_cast<std::size_t>(i)];
        if (ai == 0.0) continue;
        const auto I = kMasks[p][i];
        const auto J = static_cast<std::uint8_t>(~I & 0xF);
        double norm = 1.0;
        for (int mu = 0; mu < 4; ++mu)
            if (I & (1u << mu)) norm *= signature_sign * kEta[mu];
        r[static_cast<std::size_t>(kIndexOfMask[J])] += orientation * norm * merge_sign(I, J) * ai;
    }
    return r;
}

PForm hodge(const PForm& a) { return hodge_with(a, kOrientation, 1); }

Eigen::MatrixXd hodge_matrix(int degree) {
    require_degree(degree);
    const int n = kFormSize[degree], m = kFormSize[4 - degree];
    Eigen::MatrixXd H(m, n);
    for (int j = 0; j < n; ++j) {
        PForm b(degree);
        b[static_cast<std::size_t>(j)] = 1.0;
        H.col(j) = hodge(b).vec();
    }
    return H;
}

double inner(const PForm& a, const PForm& b) {
    if (a.degree() != b.degree()) throw ValidationError("inner product needs equal degrees");
    double s = 0.0;
    for (int i = 0; i < kFormSize[a.degree()]; ++i) {
        const auto I = kMasks[a.degree()][i];
        double w = 1.0;
        for (int mu = 0; mu < 4; ++mu)
            if (I & (1u << mu)) w *= kEta[mu];
        s += w * a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    }
    return s;
}

Eigen::MatrixXd gram_matrix(int degree) {
    require_degree(degree);
    const int n = kFormSize[degree];
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        PForm b(degree);
        b[static_cast<std::size_t>(i)] = 1.0;
        K(i, i) = inner(b, b);
    }
    return K;
}

PForm volume_form() { return hodge(PForm::scalar(1.0)); }

double volume_coefficient(const PForm& top) {
    if (top.degree() != 4) throw ValidationError("volume_coefficient requires a 4-form");
    return top[0] * kOrientation;
}

double levi_civita(int a, int b, int c, int d) {
    static const PForm vol = volume_form();
    return vol.component({a, b, c, d});
}

Rank4 epsilon_contract() {
    Rank4 out{};
    for (int e = 0; e < 4; ++e)
        for (int f = 0; f < 4; ++f)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    double s = 0.0;
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b)
                            s += levi_civita(a, b, e, f) * kEta[a] * kEta[b] * kEta[c] * kEta[d] * levi_civita(a, b, c, d);
                    out[e][f][c][d] = s;
                }
    return out;
}

double epsilon_full_contraction() {
    double s = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    const double eps = levi_civita(a, b, c, d);
                    s += eps * eps * kEta[a] * kEta[b] * kEta[c] * kEta[d];
                }
    return s;
}

// ============================================================================
// Linear maps
// ============================================================================

Eigen::MatrixXd compound_matrix(const Matrix4& M, int degree) {
    require_degree(degree);
    const int n = kFormSize[degree];
    Eigen::MatrixXd C(n, n);
    if (degree == 0) {
        C(0, 0) = 1.0;
        return C;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const auto I = kMasks[degree][i], J = kMasks[degree][j];
            Eigen::MatrixXd sub(degree, degree);
            int r = 0;
            for (int x = 0; x < 4; ++x) {
                if (!(I & (1u << x))) continue;
                int c = 0;
                for (int y = 0; y < 4; ++y) {
                    if (!(J & (1u << y))) continue;
                    sub(r, c++) = M(x, y);
                }
                ++r;
            }
            C(i, j) = sub.determinant();
        }
    }
    return C;
}

PForm apply(const Eigen::MatrixXd& T, const PForm& a) {
    if (T.rows() != T.cols() || T.cols() != static_cast<Eigen::Index>(a.size()))
        throw ValidationError("linear map does not match form degree");
    return PForm::from_vec(a.degree(), T * a.vec());
}

// ============================================================================
// Lorentz transformations
// ============================================================================

Vector4 velocity_from_rapidity(const Eigen::Vector3d& w) {
    const double phi = w.norm();
    Vector4 V(std::cosh(phi), 0.0, 0.0, 0.0);
    if (phi > 0.0) V.tail<3>() = std::sinh(phi) * w / phi;
    return V;
}

Eigen::Vector3d rapidity_from_velocity(const Vector4& V) {
    const Eigen::Vector3d v = V.tail<3>();
    const double s = v.norm();
    if (s == 0.0) return Eigen::Vector3d::Zero();
    return std::asinh(s) * v / s;
}

Matrix4 boost_matrix(const Eigen::Vector3d& w) {
    const double phi = w.norm();
    Matrix4 B = Matrix4::Identity();
    if (phi == 0.0) return B;
    const Eigen::Vector3d n = w / phi;
    const double ch = std::cosh(phi), sh = std::sinh(phi);
    B(0, 0) = ch;
    B.block<1, 3>(0, 1) = sh * n.transpose();
    B.block<3, 1>(1, 0) = sh * n;
    B.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + (ch - 1.0) * n * n.transpose();
    return B;
}

Matrix4 rotation_matrix(const Eigen::Vector3d& axis, double angle) {
    Matrix4 R = Matrix4::Identity();
    R.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
    return R;
}

PForm to_frame(const PForm& a, const Matrix4& L) {
    return PForm::from_vec(a.degree(), compound_matrix(L, a.degree()).transpose() * a.vec());
}

}  // namespace emdk
