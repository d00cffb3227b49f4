#include "emdk/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "emdk/errors.hpp"

namespace emdk {

namespace {

using json = nlohmann::json;

// ============================================================================
// Schema helpers
// ============================================================================

[[noreturn]] void fail(const std::string& source, const std::string& path, const std::string& message) {
    throw ValidationError(source + ": field '" + path + "': " + message);
}

/// Line and column (1-based) of a byte offset in text.
std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        emdk::fail(source_, path, message);
    }

    void require_object(const json& j, const std::string& path, const std::set<std::string>& allowed) const {
        if (!j.is_object()) fail(path, "expected an object");
        for (const auto& [key, value] : j.items())
            if (!allowed.count(key)) fail(path + "/" + key, "unknown field");
    }

    double number(const json& j, const std::string& path) const {
        if (!j.is_number()) fail(path, "expected a number");
        const double v = j.get<double>();
        if (!std::isfinite(v)) fail(path, "expected a finite number");
        return v;
    }

    double positive(const json& j, const std::string& path) const {
        const double v = number(j, path);
        if (!(v > 0.0)) fail(path, "expected a positive number");
        return v;
    }

    Eigen::VectorXd vector(const json& j, const std::string& path, int n) const {
        if (!j.is_array() || static_cast<int>(j.size()) != n)
            fail(path, "expected an array of " + std::to_string(n) + " numbers");
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i)
            v[i] = number(j[static_cast<std::size_t>(i)], path + "/" + std::to_string(i));
        return v;
    }

    Eigen::MatrixXd matrix(const json& j, const std::string& path, int n) const {
        if (!j.is_array() || static_cast<int>(j.size()) != n)
            fail(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " array of rows");
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            m.row(i) = vector(j[static_cast<std::size_t>(i)], path + "/" + std::to_string(i), n).transpose();
        return m;
    }

    const json& required(const json& obj, const std::string& key, const std::string& path) const {
        if (!obj.contains(key)) fail(path + "/" + key, "missing required field");
        return obj.at(key);
    }

private:
    std::string source_;
};

bool symmetric(const Eigen::Matrix3d& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
}

// ============================================================================
// Blocks
// ============================================================================

MediumSpec read_medium(const Reader& r, const json& j) {
    const std::string path = "/medium";
    if (!j.is_object()) r.fail(path, "expected an object");
    const json& kind = r.required(j, "kind", path);
    if (!kind.is_string()) r.fail(path + "/kind", "expected a string");
    MediumSpec m;
    m.kind = kind.get<std::string>();
    if (m.kind == "vacuum") {
        r.require_object(j, path, {"kind"});
    } else if (m.kind == "isotropic") {
        r.require_object(j, path, {"kind", "eps", "mu"});
        m.eps = r.positive(r.required(j, "eps", path), path + "/eps");
        m.mu = r.positive(r.required(j, "mu", path), path + "/mu");
    } else if (m.kind == "anisotropic") {
        r.require_object(j, path, {"kind", "eps", "mu"});
        m.eps3 = r.matrix(r.required(j, "eps", path), path + "/eps", 3);
        m.mu3 = r.matrix(r.required(j, "mu", path), path + "/mu", 3);
        if (!symmetric(m.eps3)) r.fail(path + "/eps", "permittivity must be symmetric");
        if (!symmetric(m.mu3)) r.fail(path + "/mu", "permeability must be symmetric");
        if (std::abs(m.mu3.determinant()) < 1e-12) r.fail(path + "/mu", "permeability must be invertible");
    } else if (m.kind == "zeta") {
        r.require_object(j, path, {"kind", "de", "db", "he", "hb"});
        m.zde = r.matrix(r.required(j, "de", path), path + "/de", 3);
        m.zdb = r.matrix(r.required(j, "db", path), path + "/db", 3);
        m.zhe = r.matrix(r.required(j, "he", path), path + "/he", 3);
        m.zhb = r.matrix(r.required(j, "hb", path), path + "/hb", 3);
    } else if (m.kind == "matrix") {
        r.require_object(j, path, {"kind", "matrix"});
        m.matrix = r.matrix(r.required(j, "matrix", path), path + "/matrix", 6);
    } else {
        r.fail(path + "/kind", "unknown medium kind '" + m.kind +
                                   "' (expected vacuum, isotropic, anisotropic, zeta or matrix)");
    }
    return m;
}

FieldSpec read_field(const Reader& r, const json& j) {
    const std::string path = "/field";
    if (!j.is_object()) r.fail(path, "expected an object");
    FieldSpec f;
    if (j.contains("family")) {
        if (!j.at("family").is_string()) r.fail(path + "/family", "expected a string");
        f.family = j.at("family").get<std::string>();
    }
    if (j.contains("point")) f.point = r.vector(j.at("point"), path + "/point", 4);
    if (f.family == "uniform") {
        r.require_object(j, path, {"family", "components", "point"});
        f.components = r.vector(r.required(j, "components", path), path + "/components", 6);
    } else if (f.family == "plane_wave") {
        r.require_object(j, path, {"family", "direction", "polarization", "amplitude", "wavenumber", "point"});
        f.direction = r.vector(r.required(j, "direction", path), path + "/direction", 3);
        f.polarization = r.vector(r.required(j, "polarization", path), path + "/polarization", 3);
        if (j.contains("amplitude")) f.amplitude = r.number(j.at("amplitude"), path + "/amplitude");
        if (j.contains("wavenumber")) f.wavenumber = r.positive(j.at("wavenumber"), path + "/wavenumber");
        if (f.direction.norm() == 0.0) r.fail(path + "/direction", "direction must be non-zero");
        if (f.polarization.norm() == 0.0) r.fail(path + "/polarization", "polarization must be non-zero");
        if (std::abs(f.direction.normalized().dot(f.polarization.normalized())) > 1e-12)
            r.fail(path + "/polarization", "polarization must be orthogonal to the direction");
    } else {
        r.fail(path + "/family", "unknown field family '" + f.family + "' (expected uniform or plane_wave)");
    }
    return f;
}

Eigen::Vector3d read_rapidity(const Reader& r, const json& j, const std::string& path) {
    const Eigen::Vector3d w = r.vector(j, path, 3);
    // cosh and sinh of the rapidity must stay finite and well above rounding
    if (w.norm() > 20.0) r.fail(path, "rapidity magnitude above 20 is not supported");
    return w;
}

/// Parser callback that rejects duplicate keys (e.g. two medium blocks).
struct DuplicateKeyGuard {
    std::vector<std::set<std::string>> stack;
    std::string duplicate;

    bool operator()(int, json::parse_event_t event, json& parsed) {
        switch (event) {
            case json::parse_event_t::object_start:
                stack.emplace_back();
                break;
            case json::parse_event_t::object_end:
                if (!stack.empty()) stack.pop_back();
                break;
            case json::parse_event_t::key:
                if (!stack.empty() && !stack.back().insert(parsed.get<std::string>()).second && duplicate.empty())
                    duplicate = parsed.get<std::string>();
                break;
            default:
                break;
        }
        return true;
    }
};

}  // namespace

// ============================================================================
// Scenario
// ============================================================================

ConstitutiveZ Scenario::constitutive() const {
    const Velocity V = medium_velocity();
    const MediumSpec& m = medium;
    if (m.kind == "vacuum") return ConstitutiveZ();
    if (m.kind == "isotropic") return build_isotropic(m.eps, m.mu, V);
    if (m.kind == "anisotropic")
        return build_anisotropic(spatial_map(m.eps3, medium_rapidity), spatial_map(m.mu3.inverse(), medium_rapidity),
                                 V);
    if (m.kind == "zeta") {
        ZetaBlocks z;
        z.V = V;
        z.zde = spatial_map(m.zde, medium_rapidity);
        z.zdb = spatial_map(m.zdb, medium_rapidity);
        z.zhe = spatial_map(m.zhe, medium_rapidity);
        z.zhb = spatial_map(m.zhb, medium_rapidity);
        return build_from_zeta(z, false);
    }
    return ConstitutiveZ(m.matrix);
}

SpacetimeField Scenario::field_sampler(double stencil_h) const {
    if (field.family == "plane_wave")
        return plane_wave_field(field.direction, field.polarization, field.amplitude, field.wavenumber, stencil_h);
    return uniform_field(from_bivector_basis(field.components), stencil_h);
}

PForm Scenario::field_value() const { return field_sampler(1e-3)(field.point); }

Scenario parse_scenario(const std::string& text, const std::string& source) {
    json doc;
    DuplicateKeyGuard guard;
    try {
        doc = json::parse(text, std::ref(guard));
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_column(text, e.byte);
        std::ostringstream os;
        os << source << ":" << line << ":" << column << ": invalid JSON: " << e.what();
        throw ValidationError(os.str());
    }
    const Reader r(source);
    if (!guard.duplicate.empty()) r.fail(guard.duplicate, "duplicate key");
    r.require_object(doc, "", {"name", "seed", "medium", "medium_velocity", "observer", "field", "tasks", "variation"});

    Scenario s;
    if (doc.contains("name")) {
        if (!doc.at("name").is_string()) r.fail("/name", "expected a string");
        s.name = doc.at("name").get<std::string>();
    }
    if (doc.contains("seed")) {
        const json& seed = doc.at("seed");
        if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<long long>() < 0))
            r.fail("/seed", "expected a non-negative integer");
        s.seed = seed.get<std::uint64_t>();
    }
    s.medium = read_medium(r, r.required(doc, "medium", ""));
    if (doc.contains("medium_velocity")) s.medium_rapidity = read_rapidity(r, doc.at("medium_velocity"), "/medium_velocity");
    if (doc.contains("observer")) s.observer_rapidity = read_rapidity(r, doc.at("observer"), "/observer");
    if (doc.contains("field")) s.field = read_field(r, doc.at("field"));

    const json& tasks = r.required(doc, "tasks", "");
    if (!tasks.is_array() || tasks.empty()) r.fail("/tasks", "expected a non-empty array of task names");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const std::string path = "/tasks/" + std::to_string(i);
        if (!tasks[i].is_string()) r.fail(path, "expected a task name");
        const std::string name = tasks[i].get<std::string>();
        const auto& known = known_tasks();
        if (std::find(known.begin(), known.end(), name) == known.end())
            r.fail(path, "unknown task '" + name + "'");
        s.tasks.push_back(name);
    }

    if (doc.contains("variation")) {
        const json& v = doc.at("variation");
        r.require_object(v, "/variation", {"edot"});
        s.edot = Matrix4(r.matrix(r.required(v, "edot", "/variation"), "/variation/edot", 4));
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError(path + ": cannot open scenario file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path);
}

}  // namespace emdk
