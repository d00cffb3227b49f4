#pragma once

#include <functional>

#include "emdk/exterior.hpp"

namespace emdk {

class ConstitutiveZ;

// ============================================================================
// Velocities and observer decompositions
// ============================================================================

/// Unit, future-pointing timelike vector (g(V,V) = -1, V^0 > 0).
class Velocity {
public:
    /// At rest in the global frame, V = X_0.
    Velocity() : v_(1.0, 0.0, 0.0, 0.0) {}
    /// Validates normalization to within tol (scaled by |V^0|^2) and future orientation.
    explicit Velocity(const Vector4& components, double tol = 1e-12);

    static Velocity from_rapidity(const Eigen::Vector3d& w);

    const Vector4& vec() const { return v_; }
    double operator[](int a) const { return v_[a]; }
    /// Metric dual V~ as a 1-form.
    PForm dual() const { return metric_dual_vec(v_); }
    Eigen::Vector3d rapidity() const { return rapidity_from_velocity(v_); }

private:
    Vector4 v_;
};

/// Pair of spatial 1-forms relative to an observer: (e, c b) for F, (d, h/c) for G.
struct FieldDecomp {
    PForm first{1};
    PForm second{1};
};

/// e = i_U F, b = i_U *F.
FieldDecomp decompose_F(const PForm& F, const Velocity& U);

/// F = e ^ U~ - *(b ^ U~). Rejects non-spatial inputs.
PForm reconstruct_F(const FieldDecomp& dec, const Velocity& U);

/// d = i_U G, h = i_U *G.
FieldDecomp decompose_G(const PForm& G, const Velocity& U);

/// G = d ^ U~ - *(h ^ U~).
PForm reconstruct_G(const FieldDecomp& dec, const Velocity& U);

/// s = *(i_V F ^ i_V *G ^ V~ + i_V *F ^ i_V G ^ V~).
PForm poynting_s(const PForm& F, const PForm& G, const Velocity& V);

/// Comoving Poynting 1-form S~ = *(V~ ^ e ^ h).
PForm comoving_poynting(const PForm& e, const PForm& h, const Velocity& V);

/// Comoving polarization p = d - e, magnetization m = b - h and P = p^V~ + *(m^V~).
struct PolarizationSplit {
    PForm p{1};
    PForm m{1};
    PForm P{2};
};

PolarizationSplit polarization_split(const PForm& F, const PForm& G, const Velocity& V);

// ============================================================================
// Fields on Minkowski coordinates
// ============================================================================

using Point4 = Vector4;

/// A p-form valued function of the Minkowski coordinates x^0..x^3.
struct SpacetimeField {
    std::function<PForm(const Point4&)> sampler;
    int degree = 0;
    double stencil_h = 1e-3;

    /// Sample with degree and finiteness checks.
    PForm operator()(const Point4& x) const;
};

/// Central-difference exterior derivative d f = e^mu ^ d_mu f at x.
PForm exterior_derivative(const SpacetimeField& f, const Point4& x);

/// The field x -> (d f)(x), sharing f's stencil.
SpacetimeField derivative_field(const SpacetimeField& f);

struct MaxwellResiduals {
    PForm dF{3};
    double dF_max = 0.0;
    /// max-abs component of d*Z(F) - j
    double source_max = 0.0;
};

MaxwellResiduals maxwell_residuals(const SpacetimeField& F, const ConstitutiveZ& Z, const SpacetimeField& j,
                                   const Point4& x);

/// Zero 3-form current, handy for source-free checks.
SpacetimeField zero_current(double stencil_h = 1e-3);

/// Constant field.
SpacetimeField uniform_field(const PForm& value, double stencil_h = 1e-3);

/// Vacuum plane wave F = dA with A = a sin(phi) p~, phi = k (x^0 - n.x):
/// F = a k cos(phi) (e^0 - n~) ^ p~. direction n is normalized, polarization is projected
/// orthogonal to n and normalized.
SpacetimeField plane_wave_field(const Eigen::Vector3d& direction, const Eigen::Vector3d& polarization,
                                double amplitude, double wavenumber = 1.0, double stencil_h = 1e-3);

/// Plane-wave F evaluated at the coordinate origin (phi = 0).
PForm plane_wave_at_origin(const Eigen::Vector3d& direction, const Eigen::Vector3d& polarization,
                           double amplitude, double wavenumber = 1.0);

/// Static point charge q at `center`: F = E_i e^0 ^ e^i with E = q r / |r|^3.
SpacetimeField coulomb_field(double charge, const Eigen::Vector3d& center, double stencil_h = 1e-3);

}  // namespace emdk
