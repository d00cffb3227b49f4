/// Python bindings for the emdk core: forms, media, stress-energy tensors, the variational
/// check and the scenario runner.

#include <optional>
#include <string>

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "emdk/errors.hpp"
#include "emdk/exterior.hpp"
#include "emdk/fields.hpp"
#include "emdk/media.hpp"
#include "emdk/report.hpp"
#include "emdk/scenario.hpp"
#include "emdk/sem.hpp"
#include "emdk/variation.hpp"

namespace py = pybind11;
using namespace emdk;

namespace {

Velocity velocity(const Eigen::Vector3d& rapidity) { return Velocity::from_rapidity(rapidity); }

Matrix4 drive_rows(const DriveForms& tau) {
    Matrix4 rows;
    for (int a = 0; a < 4; ++a) rows.row(a) = tau[a].vec().transpose();
    return rows;
}

PForm make_form(int degree, const Eigen::VectorXd& components) {
    if (degree < 0 || degree > 4) throw ValidationError("form degree must lie in 0..4");
    if (components.size() != kFormSize[degree]) throw ValidationError("wrong number of form components");
    return PForm::from_vec(degree, components);
}

py::dict classify_dict(const ClassifyResult& r) {
    py::list restarts;
    for (const auto& s : r.restarts) {
        py::dict d;
        d["start"] = s.start;
        d["rapidity"] = s.best_rapidity;
        d["objective"] = s.f;
        d["iterations"] = s.iterations;
        d["converged"] = s.converged;
        restarts.append(d);
    }
    py::dict out;
    out["verdict"] = to_string(r.verdict);
    out["residual"] = r.residual;
    out["threshold"] = r.threshold;
    out["best_rapidity"] = r.best_rapidity;
    out["best_restart"] = r.best_restart;
    out["restarts"] = restarts;
    return out;
}

RunOptions run_options(std::optional<std::uint64_t> seed, bool strict, std::optional<double> fd_step,
                       double tol_classify) {
    RunOptions opt;
    opt.seed = seed;
    opt.strict = strict;
    opt.fd_step = fd_step;
    opt.tol_classify = tol_classify;
    return opt;
}

}  // namespace

PYBIND11_MODULE(_emdk, m) {
    m.doc() = "Exterior-calculus toolkit for electromagnetic fields in linear media";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.attr("ORIENTATION") = kOrientation;
    m.attr("EPSILON_CONTRACTION_CONSTANT") = kEpsilonContractionConstant;

    // ========================================================================
    // Forms
    // ========================================================================

    py::class_<PForm>(m, "PForm")
        .def(py::init(&make_form), py::arg("degree"), py::arg("components"))
        .def_static("basis", [](const std::vector<int>& idx) {
            PForm f = PForm::scalar(1.0);
            for (int i : idx) {
                if (i < 0 || i > 3) throw ValidationError("basis index must lie in 0..3");
                f = wedge(f, PForm::basis({i}));
            }
            return f;
        })
        .def_property_readonly("degree", &PForm::degree)
        .def_property_readonly("components", [](const PForm& f) { return Eigen::VectorXd(f.vec()); })
        .def("max_abs", &PForm::max_abs)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def("__mul__", [](const PForm& f, double c) { return f * c; })
        .def("__rmul__", [](const PForm& f, double c) { return f * c; })
        .def("__repr__", [](const PForm& f) {
            std::string s = "PForm(degree=" + std::to_string(f.degree()) + ", components=[";
            for (int k = 0; k < kFormSize[f.degree()]; ++k) s += (k ? ", " : "") + std::to_string(f.vec()[k]);
            return s + "])";
        });

    m.def("wedge", &wedge, py::arg("a"), py::arg("b"));
    m.def("hodge", &hodge, py::arg("a"));
    m.def("inner", &inner, py::arg("a"), py::arg("b"));
    m.def("interior", py::overload_cast<const Vector4&, const PForm&>(&interior), py::arg("X"), py::arg("a"));
    m.def("velocity_from_rapidity", &velocity_from_rapidity, py::arg("rapidity"));
    m.def("boost_matrix", &boost_matrix, py::arg("rapidity"));

    // ========================================================================
    // Fields
    // ========================================================================

    m.def("field_from_bivector", [](const Vector6& v) { return from_bivector_basis(v); }, py::arg("components"),
          "2-form from components in the (01,02,03,23,31,12) order");
    m.def(
        "decompose_F",
        [](const PForm& F, const Eigen::Vector3d& w) {
            const FieldDecomp d = decompose_F(F, velocity(w));
            return py::make_tuple(d.first, d.second);
        },
        py::arg("F"), py::arg("rapidity"), "Electric and magnetic 1-forms (e, b) seen by the observer");
    m.def(
        "decompose_G",
        [](const PForm& G, const Eigen::Vector3d& w) {
            const FieldDecomp d = decompose_G(G, velocity(w));
            return py::make_tuple(d.first, d.second);
        },
        py::arg("G"), py::arg("rapidity"));
    m.def(
        "poynting_s", [](const PForm& F, const PForm& G, const Eigen::Vector3d& w) { return poynting_s(F, G, velocity(w)); },
        py::arg("F"), py::arg("G"), py::arg("rapidity"));

    // ========================================================================
    // Media
    // ========================================================================

    py::class_<ConstitutiveZ>(m, "ConstitutiveZ")
        .def(py::init<>())
        .def(py::init<const Matrix6&>(), py::arg("matrix"))
        .def_property_readonly("matrix", &ConstitutiveZ::matrix)
        .def("__call__", &ConstitutiveZ::operator(), py::arg("F"))
        .def("is_self_adjoint", [](const ConstitutiveZ& Z, double tol) { return is_self_adjoint(Z, tol).self_adjoint; },
             py::arg("tol") = 1e-12);

    m.def(
        "isotropic", [](double eps, double mu, const Eigen::Vector3d& w) { return build_isotropic(eps, mu, velocity(w)); },
        py::arg("eps"), py::arg("mu"), py::arg("rapidity") = Eigen::Vector3d::Zero().eval());
    m.def(
        "anisotropic",
        [](const Eigen::Matrix3d& eps, const Eigen::Matrix3d& mu, const Eigen::Vector3d& w) {
            return build_anisotropic(spatial_map(eps, w), spatial_map(mu.inverse(), w), velocity(w));
        },
        py::arg("eps"), py::arg("mu"), py::arg("rapidity") = Eigen::Vector3d::Zero().eval(),
        "Medium with rest-frame permittivity and permeability matrices moving with the given rapidity");
    m.def("intrinsic_example", &intrinsic_example);
    m.def("post_invariant", &post_invariant, py::arg("Z"));
    m.def(
        "post_invariant_zeta", [](const ConstitutiveZ& Z, const Eigen::Vector3d& w) { return post_invariant_zeta(Z, velocity(w)); },
        py::arg("Z"), py::arg("rapidity"));
    m.def(
        "count_free_components",
        [](bool self_adjoint, bool no_magnetoelectric) {
            CountOptions opt;
            opt.self_adjoint = self_adjoint;
            opt.no_magnetoelectric = no_magnetoelectric;
            return count_free_components(opt);
        },
        py::arg("self_adjoint") = true, py::arg("no_magnetoelectric") = false);
    m.def(
        "classify",
        [](const ConstitutiveZ& Z, double tol, std::uint64_t seed) {
            ClassifyOptions opt;
            opt.tol = tol;
            opt.seed = seed;
            return classify_dict(classify_intrinsic(Z, opt));
        },
        py::arg("Z"), py::arg("tol") = 1e-10, py::arg("seed") = 0);

    // ========================================================================
    // Stress-energy-momentum
    // ========================================================================

    m.def(
        "abraham_tensor",
        [](const PForm& F, const ConstitutiveZ& Z, const Eigen::Vector3d& w) {
            return Matrix4(abraham_tensor(F, Z, velocity(w)).components);
        },
        py::arg("F"), py::arg("Z"), py::arg("rapidity"));
    m.def(
        "abraham_drive",
        [](const PForm& F, const ConstitutiveZ& Z, const Eigen::Vector3d& w) {
            return drive_rows(abraham_drive(F, Z, velocity(w)));
        },
        py::arg("F"), py::arg("Z"), py::arg("rapidity"), "Rows are the 3-form components of tau_a");
    m.def(
        "minkowski_tensor", [](const PForm& F, const ConstitutiveZ& Z) { return Matrix4(minkowski_sym_tensor(F, Z).components); },
        py::arg("F"), py::arg("Z"));
    m.def("component_table", &component_table, py::arg("E"), py::arg("D"), py::arg("H"), py::arg("B"));

    // ========================================================================
    // Variation
    // ========================================================================

    m.def(
        "verify_variation",
        [](const ConstitutiveZ& Z, const PForm& F, const Eigen::Vector3d& w, const Matrix4& edot, double h) {
            CoframeVariation var;
            var.E = edot;
            const VariationCheck c = verify_variation(extract_zeta(Z, velocity(w)), F, var, h);
            py::dict out;
            out["lhs"] = c.lhs;
            out["rhs"] = c.rhs;
            out["residual"] = c.residual;
            return out;
        },
        py::arg("Z"), py::arg("F"), py::arg("rapidity"), py::arg("edot"), py::arg("h") = kVariationStep);
    m.def(
        "hodge_dot",
        [](const Matrix4& edot, const PForm& a) {
            CoframeVariation var;
            var.E = edot;
            return hodge_dot(var, a);
        },
        py::arg("edot"), py::arg("a"));

    // ========================================================================
    // Scenarios
    // ========================================================================

    m.def(
        "run_scenario",
        [](const std::string& text, std::optional<std::uint64_t> seed, bool strict, std::optional<double> fd_step,
           double tol_classify) {
            const RunOutcome o = run_scenario(parse_scenario(text), run_options(seed, strict, fd_step, tol_classify));
            return py::make_tuple(o.report, o.exit_code);
        },
        py::arg("scenario_json"), py::arg("seed") = py::none(), py::arg("strict") = false,
        py::arg("fd_step") = py::none(), py::arg("tol_classify") = 1e-10,
        "Run a scenario given as JSON text; returns (report_json, exit_code)");
    m.def(
        "selftest",
        [](std::uint64_t seed) {
            const RunOutcome o = run_selftest_report(run_options(seed, false, std::nullopt, 1e-10));
            return py::make_tuple(o.report, o.exit_code);
        },
        py::arg("seed") = 0);
}
