#include "emdk/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "emdk/errors.hpp"
#include "emdk/sampling.hpp"
#include "emdk/selftest.hpp"
#include "emdk/sem.hpp"

namespace emdk {

namespace {

using ojson = nlohmann::ordered_json;

constexpr int kReportVersion = 1;
constexpr double kMaxwellThreshold = 1e-6;
constexpr double kPostAgreementThreshold = 1e-10;
constexpr const char* kLabFrame = "lab orthonormal coframe";

// ============================================================================
// Emitter
// ============================================================================

std::string format_number(double v) {
    if (!std::isfinite(v)) throw NumericalError("refusing to emit a non-finite number in the report");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const ojson& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
    const std::string close(static_cast<std::size_t>(indent), ' ');
    switch (j.type()) {
        case ojson::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + ojson(key).dump() + ": ";
                emit(value, out, indent + 2);
            }
            out += "\n" + close + "}";
            break;
        }
        case ojson::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            // arrays of scalars stay on one line so matrices read row by row
            const bool flat = std::none_of(j.begin(), j.end(), [](const ojson& e) { return e.is_structured(); });
            if (flat) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    emit(j[i], out, indent);
                }
                out += "]";
                break;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad;
                emit(j[i], out, indent + 2);
            }
            out += "\n" + close + "]";
            break;
        }
        case ojson::value_t::number_float:
            out += format_number(j.get<double>());
            break;
        default:
            out += j.dump();
            break;
    }
}

std::string render(const ojson& j) {
    std::string out;
    emit(j, out, 0);
    out += "\n";
    return out;
}

// ============================================================================
// Serialization of library objects
// ============================================================================

ojson array_of(const Eigen::Ref<const Eigen::VectorXd>& v) {
    ojson a = ojson::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

ojson rows_of(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    ojson a = ojson::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(array_of(m.row(i).transpose()));
    return a;
}

ojson form_json(const PForm& f, const std::string& frame = kLabFrame) {
    ojson basis = ojson::array();
    for (int k = 0; k < kFormSize[f.degree()]; ++k) basis.push_back(basis_label(f.degree(), k));
    return {{"degree", f.degree()}, {"frame", frame}, {"basis", basis}, {"components", array_of(f.vec())}};
}

ojson tensor_json(const Matrix4& T, const std::string& frame = kLabFrame) {
    return {{"frame", frame}, {"components", rows_of(T)}};
}

ojson drive_json(const DriveForms& tau) {
    ojson basis = ojson::array();
    for (int k = 0; k < 4; ++k) basis.push_back(basis_label(3, k));
    Matrix4 rows;
    for (int a = 0; a < 4; ++a) rows.row(a) = tau[a].vec().transpose();
    return {{"frame", kLabFrame}, {"basis", basis}, {"components", rows_of(rows)}};
}

ojson velocity_json(const Velocity& V, const Eigen::Vector3d& w) {
    return {{"rapidity", array_of(w)}, {"vector", array_of(V.vec())}, {"frame", kLabFrame}};
}

ojson conventions() {
    ojson order = ojson::array();
    for (const char* s : {"01", "02", "03", "23", "31", "12"}) order.push_back(s);
    return {{"signature", "(-,+,+,+)"},
            {"orientation", orientation_description()},
            {"form_components", "strictly increasing multi-indices in lexicographic order"},
            {"bivector_order", order},
            {"tensor_components", "T_ab in the global orthonormal frame, row a, column b"},
            {"units", "natural (eps0 = mu0 = c = 1)"},
            {"action_density", "-1/2 F ^ *Z(F)"},
            {"velocities", "rapidity 3-vectors w, V = (cosh|w|, sinh|w| w/|w|)"}};
}

// ============================================================================
// Tasks
// ============================================================================

struct Context {
    Context(const Scenario& s, const RunOptions& o) : scenario(s), options(o) {}

    const Scenario& scenario;
    const RunOptions& options;
    std::uint64_t seed = 0;
    double stencil_h = 1e-3;
    double variation_h = kVariationStep;
    ConstitutiveZ Z;
    Velocity V, U;
    PForm F{2};
    std::vector<std::string> failures;
};

ojson task_decompose(Context& c) {
    const PForm G = c.Z(c.F);
    const FieldDecomp eb = decompose_F(c.F, c.U);
    const FieldDecomp dh = decompose_G(G, c.U);
    const PolarizationSplit pm = polarization_split(c.F, G, c.V);
    return {{"task", "decompose"},
            {"relative_to", "observer"},
            {"e", form_json(eb.first)},
            {"b", form_json(eb.second)},
            {"d", form_json(dh.first)},
            {"h", form_json(dh.second)},
            {"G", form_json(G)},
            {"poynting_s", form_json(poynting_s(c.F, G, c.V))},
            {"polarization_p", form_json(pm.p)},
            {"magnetization_m", form_json(pm.m)}};
}

ojson task_sem_abraham(Context& c) {
    const SemTensor T = abraham_tensor(c.F, c.Z, c.V);
    const DriveForms tau = abraham_drive(c.F, c.Z, c.V);
    const ComovingReport r = comoving_report(c.F, c.Z, c.V);
    return {{"task", "sem_abraham"},
            {"tensor", tensor_json(T.components)},
            {"drive_forms", drive_json(tau)},
            {"asymmetry", T.asymmetry()},
            {"drive_tensor_mismatch", (drive_to_tensor(tau).components - T.components).cwiseAbs().maxCoeff()},
            {"comoving",
             {{"frame", "medium rest frame"},
              {"E", array_of(r.E)},
              {"D", array_of(r.D)},
              {"H", array_of(r.H)},
              {"B", array_of(r.B)},
              {"tensor", tensor_json(r.T, "medium rest frame")},
              {"component_table_deviation", (r.T - r.table).cwiseAbs().maxCoeff()}}}};
}

ojson task_sem_minkowski(Context& c) {
    const SemTensor T = minkowski_sym_tensor(c.F, c.Z);
    return {{"task", "sem_minkowski"},
            {"tensor", tensor_json(T.components)},
            {"drive_forms", drive_json(minkowski_sym_drive(c.F, c.Z))},
            {"asymmetry", T.asymmetry()}};
}

ojson task_post_invariant(Context& c) {
    const double chi = post_invariant(c.Z);
    const double chi_zeta = post_invariant_zeta(c.Z, c.V);
    const double gap = std::abs(chi - chi_zeta);
    if (c.options.strict && gap > kPostAgreementThreshold) c.failures.push_back("post_invariant: two routes disagree");
    const AdjointCheck adj = is_self_adjoint(c.Z, 1e-10);
    return {{"task", "post_invariant"},
            {"chi", chi},
            {"chi_from_zeta", chi_zeta},
            {"agreement", gap},
            {"self_adjoint", adj.self_adjoint},
            {"self_adjoint_violation", adj.max_violation}};
}

ojson task_classify(Context& c) {
    ClassifyOptions opt;
    opt.tol = c.options.tol_classify;
    opt.seed = c.seed;
    const ClassifyResult res = classify_intrinsic(c.Z, opt);
    if (res.verdict == Verdict::Undecided) c.failures.push_back("classify: UNDECIDED");
    ojson restarts = ojson::array();
    for (const auto& r : res.restarts)
        restarts.push_back({{"start", array_of(r.start)},
                            {"rapidity", array_of(r.best_rapidity)},
                            {"objective", r.f},
                            {"iterations", r.iterations},
                            {"converged", r.converged}});
    return {{"task", "classify"},
            {"verdict", to_string(res.verdict)},
            {"residual", res.residual},
            {"threshold", res.threshold},
            {"tolerance", opt.tol},
            {"best_rapidity", array_of(res.best_rapidity)},
            {"best_velocity", array_of(res.best_V)},
            {"best_restart", res.best_restart},
            {"seed", c.seed},
            {"restarts", restarts}};
}

ojson task_verify_variation(Context& c) {
    CoframeVariation var;
    if (c.scenario.edot) {
        var.E = *c.scenario.edot;
    } else {
        Sampler rng(c.seed);
        var = rng.variation();
    }
    const VariationCheck check = verify_variation(extract_zeta(c.Z, c.V), c.F, var, c.variation_h);
    const bool passed = check.residual <= kVariationResidualThreshold;
    if (c.options.strict && !passed) c.failures.push_back("verify_variation: residual above threshold");
    return {{"task", "verify_variation"},
            {"edot", {{"frame", kLabFrame}, {"rows", "e-dot^a components on e^b"}, {"components", rows_of(var.E)}}},
            {"step", c.variation_h},
            {"lhs", check.lhs},
            {"rhs", check.rhs},
            {"residual", check.residual},
            {"threshold", kVariationResidualThreshold},
            {"passed", passed}};
}

ojson selftest_json(const std::vector<CheckResult>& checks, std::vector<std::string>& failures) {
    ojson list = ojson::array();
    bool all = true;
    for (const auto& r : checks) {
        all = all && r.passed;
        if (!r.passed) failures.push_back("selftest: " + r.name);
        list.push_back({{"name", r.name},
                        {"samples", r.samples},
                        {"max_error", r.max_error},
                        {"tolerance", r.tolerance},
                        {"passed", r.passed}});
    }
    return {{"task", "selftest"}, {"passed", all}, {"checks", list}};
}

std::vector<CheckResult> selftest_checks(std::uint64_t seed, double variation_h, bool inject_flip) {
    SelftestOptions opt;
    opt.seed = seed;
    opt.fd_step = variation_h;
    // the injected flip uses a Euclidean-signed Hodge star, which must break the identities
    if (inject_flip) opt.convention.signature = -1;
    return run_selftest(opt);
}

ojson task_selftest(Context& c) {
    return selftest_json(selftest_checks(c.seed, c.variation_h, c.options.inject_convention_flip), c.failures);
}

ojson scenario_json(const Context& c) {
    const Scenario& s = c.scenario;
    ojson tasks = ojson::array();
    for (const auto& t : s.tasks) tasks.push_back(t);
    return {{"name", s.name},
            {"seed", c.seed},
            {"medium_kind", s.medium.kind},
            {"medium_velocity", velocity_json(c.V, s.medium_rapidity)},
            {"observer", velocity_json(c.U, s.observer_rapidity)},
            {"tasks", tasks},
            {"fd_step", {{"stencil", c.stencil_h}, {"variation", c.variation_h}}},
            {"strict", c.options.strict}};
}

ojson field_json(Context& c) {
    ojson out = {{"family", c.scenario.field.family},
                 {"point", array_of(c.scenario.field.point)},
                 {"F", form_json(c.F)}};
    const MaxwellResiduals r =
        maxwell_residuals(c.scenario.field_sampler(c.stencil_h), c.Z, zero_current(), c.scenario.field.point);
    if (c.options.strict && (r.dF_max > kMaxwellThreshold || r.source_max > kMaxwellThreshold))
        c.failures.push_back("field: Maxwell residual above threshold");
    out["maxwell"] = {{"dF_max", r.dF_max}, {"source_max", r.source_max}, {"threshold", kMaxwellThreshold}};
    return out;
}

ojson header(const std::string& command) {
    return {{"report_version", kReportVersion}, {"command", command}, {"conventions", conventions()}};
}

RunOutcome finish(ojson report, const std::vector<std::string>& failures) {
    ojson list = ojson::array();
    for (const auto& f : failures) list.push_back(f);
    const int code = failures.empty() ? kExitOk : kExitNumerical;
    report["status"] = {{"exit_code", code}, {"failures", list}};
    return {render(report), code};
}

Context make_context(const Scenario& s, const RunOptions& options) {
    Context c(s, options);
    c.seed = options.seed ? *options.seed : s.seed.value_or(0);
    if (options.fd_step) {
        if (!(*options.fd_step > 0.0) || !std::isfinite(*options.fd_step))
            throw ValidationError("--fd-step must be a positive finite number");
        c.stencil_h = c.variation_h = *options.fd_step;
    }
    if (!(options.tol_classify > 0.0)) throw ValidationError("--tol-classify must be positive");
    c.Z = s.constitutive();
    c.V = s.medium_velocity();
    c.U = s.observer();
    c.F = s.field_value();
    return c;
}

}  // namespace

// ============================================================================
// Entry points
// ============================================================================

RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options) {
    Context c = make_context(scenario, options);
    ojson report = header("run");
    report["scenario"] = scenario_json(c);
    report["field"] = field_json(c);
    ojson results = ojson::array();
    for (const auto& task : scenario.tasks) {
        if (task == "decompose") results.push_back(task_decompose(c));
        else if (task == "sem_abraham") results.push_back(task_sem_abraham(c));
        else if (task == "sem_minkowski") results.push_back(task_sem_minkowski(c));
        else if (task == "post_invariant") results.push_back(task_post_invariant(c));
        else if (task == "classify") results.push_back(task_classify(c));
        else if (task == "verify_variation") results.push_back(task_verify_variation(c));
        else if (task == "selftest") results.push_back(task_selftest(c));
        else throw ValidationError("unknown task '" + task + "'");
    }
    report["results"] = results;
    return finish(report, c.failures);
}

RunOutcome classify_scenario(const Scenario& scenario, const RunOptions& options) {
    Context c = make_context(scenario, options);
    ojson report = header("classify");
    report["scenario"] = scenario_json(c);
    report["results"] = ojson::array({task_post_invariant(c), task_classify(c)});
    return finish(report, c.failures);
}

RunOutcome run_selftest_report(const RunOptions& options) {
    const std::uint64_t seed = options.seed.value_or(0);
    double h = kVariationStep;
    if (options.fd_step) {
        if (!(*options.fd_step > 0.0) || !std::isfinite(*options.fd_step))
            throw ValidationError("--fd-step must be a positive finite number");
        h = *options.fd_step;
    }
    std::vector<std::string> failures;
    ojson report = header("selftest");
    report["scenario"] = {{"seed", seed}, {"fd_step", {{"variation", h}}}};
    report["results"] = ojson::array({selftest_json(selftest_checks(seed, h, options.inject_convention_flip), failures)});
    return finish(report, failures);
}

}  // namespace emdk
