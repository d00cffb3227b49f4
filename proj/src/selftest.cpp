#include "emdk/selftest.hpp"

#include <cmath>
#include <functional>

#include "emdk/fields.hpp"
#include "emdk/media.hpp"
#include "emdk/sampling.hpp"
#include "emdk/sem.hpp"
#include "emdk/variation.hpp"

namespace emdk {

namespace {

CheckResult make_check(std::string name, int samples, double tol, const std::function<double(int)>& trial) {
    CheckResult r;
    r.name = std::move(name);
    r.samples = samples;
    r.tolerance = tol;
    for (int i = 0; i < samples; ++i) {
        const double e = trial(i);
        r.max_error = std::isfinite(e) ? std::max(r.max_error, e) : INFINITY;
    }
    r.passed = r.max_error <= tol;
    return r;
}

int random_degree(Sampler& rng, int lo, int hi) {
    return std::min(hi, lo + static_cast<int>(rng.uniform(0.0, 1.0) * (hi - lo + 1)));
}

}  // namespace

std::vector<CheckResult> run_identity_suite(std::uint64_t seed, int n, double tol, const HodgeConvention& conv) {
    Sampler rng(seed);
    const auto star = [&conv](const PForm& a) { return hodge_with(a, conv.orientation, conv.signature); };
    std::vector<CheckResult> out;

    out.push_back(make_check("id_wedge", n, tol, [&](int) {
        const int p = random_degree(rng, 0, 4), q = random_degree(rng, 0, 4 - p);
        const PForm a = rng.form(p), b = rng.form(q);
        const double sign = (p * q) % 2 == 0 ? 1.0 : -1.0;
        return max_abs_diff(wedge(a, b), wedge(b, a) * sign);
    }));
    out.push_back(make_check("id_star_pivot", n, tol, [&](int) {
        const int p = random_degree(rng, 0, 4);
        const PForm a = rng.form(p), b = rng.form(p);
        // both sides must also equal <a,b> vol
        const PForm lhs = wedge(a, star(b));
        const PForm vol = star(PForm::scalar(1.0));
        return std::max(max_abs_diff(lhs, wedge(b, star(a))), max_abs_diff(lhs, vol * inner(a, b)));
    }));
    out.push_back(make_check("id_iX_star", n, tol, [&](int) {
        const int p = random_degree(rng, 0, 3);
        const PForm a = rng.form(p);
        const Vector4 X = rng.vector();
        return max_abs_diff(interior(X, star(a)), star(wedge(a, metric_dual_vec(X))));
    }));
    out.push_back(make_check("id_star_iX", n, tol, [&](int) {
        const int p = random_degree(rng, 1, 4);
        const PForm a = rng.form(p);
        const Vector4 X = rng.vector();
        return max_abs_diff(star(interior(X, a)), -wedge(star(a), metric_dual_vec(X)));
    }));
    out.push_back(make_check("id_star_star", n, tol, [&](int) {
        const int p = random_degree(rng, 0, 4);
        const PForm a = rng.form(p);
        return max_abs_diff(star(star(a)), a * ((p + 1) % 2 == 0 ? 1.0 : -1.0));
    }));
    out.push_back(make_check("id_iX_move", n, tol, [&](int) {
        // p + q >= 5 so that a ^ b vanishes identically
        const int p = random_degree(rng, 1, 4), q = random_degree(rng, 5 - p, 4);
        const PForm a = rng.form(p), b = rng.form(q);
        const Vector4 X = rng.vector();
        const double sign = (p + 1) % 2 == 0 ? 1.0 : -1.0;
        return max_abs_diff(wedge(interior(X, a), b), wedge(a, interior(X, b)) * sign);
    }));
    out.push_back(make_check("id_d_move", n, tol, [&](int) {
        // Algebraic content on affine fields a(x) = a0 + x^mu a_mu, where d a = e^mu ^ a_mu
        // exactly: the Leibniz rule d(a^b) = da^b + (-1)^p a^db at x = 0, and the move
        // identity da^b = (-1)^(p+1) a^db whenever p + q >= 4.
        const int p = random_degree(rng, 0, 3), q = random_degree(rng, 0, 3 - p);
        std::array<PForm, 5> a, b;
        for (auto& f : a) f = rng.form(p);
        for (auto& f : b) f = rng.form(q);
        PForm da(p + 1), db(q + 1), dab(p + q + 1);
        for (int mu = 0; mu < 4; ++mu) {
            const PForm e = PForm::basis({mu});
            da += wedge(e, a[static_cast<std::size_t>(mu + 1)]);
            db += wedge(e, b[static_cast<std::size_t>(mu + 1)]);
            // d_mu (a ^ b) at x = 0
            dab += wedge(e, wedge(a[static_cast<std::size_t>(mu + 1)], b[0]) + wedge(a[0], b[static_cast<std::size_t>(mu + 1)]));
        }
        const double sign = p % 2 == 0 ? 1.0 : -1.0;
        double err = max_abs_diff(dab, wedge(da, b[0]) + wedge(a[0], db) * sign);
        const PForm top_a = rng.form(2), top_b = rng.form(2);  // p + q = 4
        PForm dta(3), dtb(3);
        for (int mu = 0; mu < 4; ++mu) {
            dta += wedge(PForm::basis({mu}), rng.form(2));
            dtb += wedge(PForm::basis({mu}), rng.form(2));
        }
        const PForm lhs = wedge(dta, top_b), rhs = wedge(top_a, dtb) * -1.0;
        err = std::max(err, std::max(lhs.max_abs(), rhs.max_abs()));
        return err;
    }));
    return out;
}

std::vector<CheckResult> run_selftest(const SelftestOptions& opt) {
    std::vector<CheckResult> out = run_identity_suite(opt.seed, opt.samples, 1e-12, opt.convention);
    Sampler rng(opt.seed + 1);
    const int n = std::max(1, opt.samples / 4);

    out.push_back(make_check("decompose_round_trip", n, 1e-12, [&](int) {
        const PForm F = rng.form(2);
        const Velocity U = rng.velocity(1.0);
        return max_abs_diff(reconstruct_F(decompose_F(F, U), U), F) / std::max(1.0, std::pow(U[0], 2));
    }));
    out.push_back(make_check("zeta_round_trip", n, 1e-12, [&](int) {
        const ConstitutiveZ Z = rng.self_adjoint_Z();
        const Velocity V = rng.velocity(1.0);
        return (build_from_zeta(extract_zeta(Z, V)).matrix() - Z.matrix()).cwiseAbs().maxCoeff() /
               std::max(1.0, std::pow(V[0], 4));
    }));
    out.push_back(make_check("drive_tensor_round_trip", n, 1e-12, [&](int) {
        DriveForms tau;
        for (int a = 0; a < 4; ++a) tau[a] = rng.form(3);
        return max_abs_diff(tensor_to_drive(drive_to_tensor(tau)), tau);
    }));
    out.push_back(make_check("post_invariant_two_way", n, 1e-10, [&](int) {
        const ConstitutiveZ Z = rng.self_adjoint_Z();
        return std::abs(post_invariant(Z) - post_invariant_zeta(Z, rng.velocity(1.0)));
    }));
    out.push_back(make_check("abraham_drive_tensor", n, 1e-12, [&](int) {
        const ConstitutiveZ Z = rng.self_adjoint_Z();
        const PForm F = rng.form(2);
        const Velocity V = rng.velocity(0.5);
        return (drive_to_tensor(abraham_drive(F, Z, V)).components - abraham_tensor(F, Z, V).components)
                   .cwiseAbs()
                   .maxCoeff() /
               std::pow(V[0], 4);
    }));
    out.push_back(make_check("verify_variation", 1, 1e-7, [&](int) {
        const ConstitutiveZ Z = rng.self_adjoint_Z();
        const Velocity V = rng.velocity(0.5);
        return verify_variation(extract_zeta(Z, V), rng.form(2), rng.variation(1.0), opt.fd_step).residual;
    }));
    return out;
}

}  // namespace emdk
