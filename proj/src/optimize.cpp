#include "emdk/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace emdk {

namespace {

double safe_eval(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opt) {
    const auto n = x0.size();
    std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> values(static_cast<std::size_t>(n + 1));
    for (Eigen::Index i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i + 1)][i] += opt.initial_step;
    for (std::size_t i = 0; i < simplex.size(); ++i) values[i] = safe_eval(f, simplex[i]);

    std::vector<std::size_t> order(simplex.size());
    NelderMeadResult result;

    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<Eigen::VectorXd> s2;
        std::vector<double> v2;
        for (auto i : order) {
            s2.push_back(simplex[i]);
            v2.push_back(values[i]);
        }
        simplex.swap(s2);
        values.swap(v2);
    };

    auto converged = [&] {
        double diameter = 0.0;
        for (std::size_t i = 1; i < simplex.size(); ++i)
            diameter = std::max(diameter, (simplex[i] - simplex[0]).cwiseAbs().maxCoeff());
        const double spread = values.back() - values.front();
        return diameter <= opt.xatol || spread <= opt.fatol + opt.frtol * std::abs(values.front());
    };

    sort_simplex();
    int it = 0;
    for (; it < opt.max_iterations; ++it) {
        if (converged()) {
            result.converged = true;
            break;
        }
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) centroid += simplex[static_cast<std::size_t>(i)];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd& worst = simplex.back();
        const Eigen::VectorXd xr = centroid + (centroid - worst);
        const double fr = safe_eval(f, xr);

        if (fr < values.front()) {
            const Eigen::VectorXd xe = centroid + 2.0 * (centroid - worst);
            const double fe = safe_eval(f, xe);
            if (fe < fr) {
                simplex.back() = xe;
                values.back() = fe;
            } else {
                simplex.back() = xr;
                values.back() = fr;
            }
        } else if (fr < values[values.size() - 2]) {
            simplex.back() = xr;
            values.back() = fr;
        } else {
            // contraction, outside if the reflection improved on the worst point
            const bool outside = fr < values.back();
            const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + 0.5 * (xr - centroid))
                                               : Eigen::VectorXd(centroid + 0.5 * (worst - centroid));
            const double fc = safe_eval(f, xc);
            if (fc < (outside ? fr : values.back())) {
                simplex.back() = xc;
                values.back() = fc;
            } else {
                for (std::size_t i = 1; i < simplex.size(); ++i) {
                    simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0]);
                    values[i] = safe_eval(f, simplex[i]);
                }
            }
        }
        sort_simplex();
    }
    if (!result.converged && converged()) result.converged = true;
    result.x = simplex.front();
    result.f = values.front();
    result.iterations = it;
    return result;
}

}  // namespace emdk
