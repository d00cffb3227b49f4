#include "emdk/fields.hpp"

#include <cmath>
#include <sstream>

#include "emdk/errors.hpp"
#include "emdk/media.hpp"

namespace emdk {

namespace {

void require_degree(const PForm& f, int degree, const char* what) {
    if (f.degree() != degree) {
        std::ostringstream os;
        os << what << " must have degree " << degree << ", got " << f.degree();
        throw ValidationError(os.str());
    }
}

void require_spatial(const PForm& a, const Velocity& U, const char* what) {
    const double scale = std::max(1.0, a.max_abs() * U.vec().cwiseAbs().maxCoeff());
    if (std::abs(interior(U.vec(), a)[0]) > 1e-12 * scale)
        throw ValidationError(std::string(what) + " is not spatial with respect to the observer");
}

}  // namespace

Velocity::Velocity(const Vector4& v, double tol) : v_(v) {
    if (!v.allFinite()) throw ValidationError("velocity has non-finite components");
    const double norm = -v[0] * v[0] + v.tail<3>().squaredNorm();
    if (std::abs(norm + 1.0) > tol * std::max(1.0, v[0] * v[0])) {
        std::ostringstream os;
        os.precision(17);
        os << "velocity is not unit timelike: g(V,V) = " << norm;
        throw ValidationError(os.str());
    }
    if (v[0] <= 0.0) throw ValidationError("velocity is not future pointing");
}

Velocity Velocity::from_rapidity(const Eigen::Vector3d& w) {
    if (!w.allFinite()) throw ValidationError("rapidity has non-finite components");
    return Velocity(velocity_from_rapidity(w));
}

// ============================================================================
// Decompositions
// ============================================================================

FieldDecomp decompose_F(const PForm& F, const Velocity& U) {
    require_degree(F, 2, "F");
    return {interior(U.vec(), F), interior(U.vec(), hodge(F))};
}

PForm reconstruct_F(const FieldDecomp& dec, const Velocity& U) {
    require_degree(dec.first, 1, "e");
    require_degree(dec.second, 1, "b");
    require_spatial(dec.first, U, "e");
    require_spatial(dec.second, U, "b");
    const PForm Ut = U.dual();
    return wedge(dec.first, Ut) - hodge(wedge(dec.second, Ut));
}

FieldDecomp decompose_G(const PForm& G, const Velocity& U) {
    require_degree(G, 2, "G");
    return {interior(U.vec(), G), interior(U.vec(), hodge(G))};
}

PForm reconstruct_G(const FieldDecomp& dec, const Velocity& U) { return reconstruct_F(dec, U); }

PForm poynting_s(const PForm& F, const PForm& G, const Velocity& V) {
    require_degree(F, 2, "F");
    require_degree(G, 2, "G");
    const Vector4& v = V.vec();
    const PForm Vt = V.dual();
    const PForm e = interior(v, F), b = interior(v, hodge(F));
    const PForm d = interior(v, G), h = interior(v, hodge(G));
    return hodge(wedge(wedge(e, h), Vt) + wedge(wedge(b, d), Vt));
}

PForm comoving_poynting(const PForm& e, const PForm& h, const Velocity& V) {
    return hodge(wedge(wedge(V.dual(), e), h));
}

PolarizationSplit polarization_split(const PForm& F, const PForm& G, const Velocity& V) {
    const FieldDecomp eb = decompose_F(F, V);
    const FieldDecomp dh = decompose_G(G, V);
    PolarizationSplit out;
    out.p = dh.first - eb.first;
    out.m = eb.second - dh.second;
    const PForm Vt = V.dual();
    out.P = wedge(out.p, Vt) + hodge(wedge(out.m, Vt));
    return out;
}

// ============================================================================
// Finite differences
// ============================================================================

PForm SpacetimeField::operator()(const Point4& x) const {
    if (!sampler) throw ValidationError("spacetime field has no sampler");
    PForm v = sampler(x);
    if (v.degree() != degree) throw ValidationError("spacetime field returned a form of unexpected degree");
    for (double c : v.components())
        if (!std::isfinite(c)) throw NumericalError("spacetime field produced a non-finite sample");
    return v;
}

PForm exterior_derivative(const SpacetimeField& f, const Point4& x) {
    if (!(f.stencil_h > 0.0)) throw ValidationError("stencil step must be positive");
    if (f.degree >= 4) return PForm::degenerate_zero();
    PForm df(f.degree + 1);
    for (int mu = 0; mu < 4; ++mu) {
        Point4 xp = x, xm = x;
        xp[mu] += f.stencil_h;
        xm[mu] -= f.stencil_h;
        const PForm deriv = (f(xp) - f(xm)) * (0.5 / f.stencil_h);
        df += wedge(PForm::basis({mu}), deriv);
    }
    return df;
}

SpacetimeField derivative_field(const SpacetimeField& f) {
    return {[f](const Point4& x) { return exterior_derivative(f, x); }, f.degree + 1, f.stencil_h};
}

MaxwellResiduals maxwell_residuals(const SpacetimeField& F, const ConstitutiveZ& Z, const SpacetimeField& j,
                                   const Point4& x) {
    if (F.degree != 2) throw ValidationError("Maxwell residuals need a 2-form field");
    if (j.degree != 3) throw ValidationError("current must be a 3-form field");
    MaxwellResiduals r;
    r.dF = exterior_derivative(F, x);
    r.dF_max = r.dF.max_abs();
    const SpacetimeField starG{[F, Z](const Point4& y) { return hodge(Z(F(y))); }, 2, F.stencil_h};
    r.source_max = (exterior_derivative(starG, x) - j(x)).max_abs();
    return r;
}

SpacetimeField zero_current(double stencil_h) {
    return {[](const Point4&) { return PForm(3); }, 3, stencil_h};
}

SpacetimeField uniform_field(const PForm& value, double stencil_h) {
    return {[value](const Point4&) { return value; }, value.degree(), stencil_h};
}

namespace {

struct PlaneWaveGeometry {
    Eigen::Vector3d n, p;
};

PlaneWaveGeometry plane_wave_geometry(const Eigen::Vector3d& direction, const Eigen::Vector3d& polarization) {
    if (direction.norm() == 0.0) throw ValidationError("plane wave direction must be nonzero");
    const Eigen::Vector3d n = direction.normalized();
    const Eigen::Vector3d p = polarization - polarization.dot(n) * n;
    if (p.norm() < 1e-12) throw ValidationError("plane wave polarization must not be parallel to its direction");
    return {n, p.normalized()};
}

PForm plane_wave_value(const PlaneWaveGeometry& g, double amplitude, double k, double phase) {
    const PForm k_form = PForm::one_form(Vector4(1.0, -g.n[0], -g.n[1], -g.n[2]));
    const PForm p_form = PForm::one_form(Vector4(0.0, g.p[0], g.p[1], g.p[2]));
    return wedge(k_form, p_form) * (amplitude * k * std::cos(phase));
}

}  // namespace

SpacetimeField plane_wave_field(const Eigen::Vector3d& direction, const Eigen::Vector3d& polarization,
                                double amplitude, double wavenumber, double stencil_h) {
    const PlaneWaveGeometry g = plane_wave_geometry(direction, polarization);
    return {[g, amplitude, wavenumber](const Point4& x) {
                const double phase = wavenumber * (x[0] - g.n.dot(x.tail<3>()));
                return plane_wave_value(g, amplitude, wavenumber, phase);
            },
            2, stencil_h};
}

PForm plane_wave_at_origin(const Eigen::Vector3d& direction, const Eigen::Vector3d& polarization, double amplitude,
                           double wavenumber) {
    return plane_wave_value(plane_wave_geometry(direction, polarization), amplitude, wavenumber, 0.0);
}

SpacetimeField coulomb_field(double charge, const Eigen::Vector3d& center, double stencil_h) {
    return {[charge, center](const Point4& x) {
                const Eigen::Vector3d r = x.tail<3>() - center;
                const double r2 = r.squaredNorm();
                if (r2 == 0.0) throw NumericalError("Coulomb field sampled at the charge position");
                const Eigen::Vector3d E = charge * r / (r2 * std::sqrt(r2));
                PForm F(2);
                for (int i = 0; i < 3; ++i) F += PForm::basis({0, i + 1}) * E[i];
                return F;
            },
            2, stencil_h};
}

}  // namespace emdk
