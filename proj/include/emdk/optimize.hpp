#pragma once

#include <functional>

#include <Eigen/Dense>

namespace emdk {

struct NelderMeadOptions {
    int max_iterations = 500;
    double initial_step = 0.5;
    /// converged when the simplex diameter drops below xatol ...
    double xatol = 1e-10;
    /// ... or the spread of vertex values drops below fatol + frtol * |f_best|
    double fatol = 1e-30;
    double frtol = 1e-13;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double f = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization (standard reflection/expansion/contraction/shrink).
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options = {});

}  // namespace emdk
