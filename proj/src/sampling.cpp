#include "emdk/sampling.hpp"

#include <numbers>

namespace emdk {

double Sampler::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

PForm Sampler::form(int degree) {
    PForm f(degree);
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = uniform();
    return f;
}

Vector4 Sampler::vector() { return {uniform(), uniform(), uniform(), uniform()}; }

Eigen::Vector3d Sampler::vector3(double scale) {
    return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)};
}

Velocity Sampler::velocity(double max_rapidity) {
    // uniform direction, uniform rapidity magnitude
    Eigen::Vector3d w;
    do {
        w = vector3(1.0);
    } while (w.norm() > 1.0 || w.norm() < 1e-3);
    return Velocity::from_rapidity(w.normalized() * uniform(0.0, max_rapidity));
}

Matrix4 Sampler::lorentz(double max_rapidity) {
    Eigen::Vector3d axis;
    do {
        axis = vector3(1.0);
    } while (axis.norm() < 1e-3);
    const Matrix4 R = rotation_matrix(axis, uniform(-std::numbers::pi, std::numbers::pi));
    return R * boost_matrix(velocity(max_rapidity).rapidity());
}

Eigen::Matrix3d Sampler::spd3(double lo, double hi) {
    const Eigen::Matrix3d Q = Eigen::Quaterniond(uniform(), uniform(), uniform(), uniform()).normalized().toRotationMatrix();
    const Eigen::Vector3d lambda(uniform(lo, hi), uniform(lo, hi), uniform(lo, hi));
    return Q * lambda.asDiagonal() * Q.transpose();
}

ConstitutiveZ Sampler::self_adjoint_Z() {
    Matrix6 R;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) R(i, j) = uniform();
    return ConstitutiveZ::from_lex(0.5 * (R + adjoint(R, 2)));
}

ConstitutiveZ Sampler::isotropic_Z() {
    const double eps = uniform(1.0, 4.0);
    const double mu = uniform(0.5, 2.0);
    return build_isotropic(eps, mu, velocity(1.0));
}

ConstitutiveZ Sampler::anisotropic_Z() {
    const Velocity V = velocity(1.0);
    const Eigen::Vector3d w = V.rapidity();
    return build_anisotropic(spatial_map(spd3(), w), spatial_map(spd3(0.3, 2.0), w), V);
}

CoframeVariation Sampler::variation(double scale) {
    CoframeVariation v;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) v.E(a, b) = uniform(-scale, scale);
    return v;
}

}  // namespace emdk
