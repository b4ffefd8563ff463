#include "qgraph/document.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qgraph/errors.hpp"

namespace qgraph {

using nlohmann::json;

namespace {

struct ParamSpec {
    std::vector<std::string> required;
    std::map<std::string, double> optional;
};

const std::map<std::string, ParamSpec>& named_types() {
    static const std::map<std::string, ParamSpec> types = {
        {"dirichlet", {}},
        {"neumann", {}},
        {"kirchhoff", {}},
        {"robin", {{"phi"}, {}}},
        {"delta", {{"strength"}, {{"mu", 0.0}}}},
        {"delta_prime", {{"strength"}, {}}},
        {"cyclic", {{"c"}, {}}},
        {"sl2", {{"a", "b", "c", "d"}, {{"mu", 0.0}}}},
    };
    return types;
}

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (auto a : allowed) {
            ok = ok || key == a;
        }
        if (!ok) {
            throw ParseError(std::string(where) + ": unknown key '" + key + "'");
        }
    }
}

const json& require_key(const json& obj, const char* key, std::string_view where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(std::string(where) + ": missing key '" + key + "'");
    }
    return *it;
}

double require_number(const json& v, std::string_view where) {
    if (!v.is_number()) {
        throw ParseError(std::string(where) + ": expected a number");
    }
    return v.get<double>();
}

std::string require_string(const json& v, std::string_view where) {
    if (!v.is_string()) {
        throw ParseError(std::string(where) + ": expected a string");
    }
    return v.get<std::string>();
}

ComplexMatrix parse_complex_matrix(const json& v, std::string_view where) {
    if (!v.is_array() || v.empty()) {
        throw ParseError(std::string(where) + ": expected a nonempty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(v.size());
    Eigen::Index cols = -1;
    ComplexMatrix m;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = v[static_cast<std::size_t>(i)];
        if (!row.is_array()) {
            throw ParseError(std::string(where) + ": each row must be an array");
        }
        if (cols < 0) {
            cols = static_cast<Eigen::Index>(row.size());
            m.resize(rows, cols);
        } else if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw ParseError(std::string(where) + ": rows have different lengths");
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
            const json& z = row[static_cast<std::size_t>(j)];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
                throw ParseError(std::string(where) +
                                 ": complex entries must be [re, im] number pairs");
            }
            m(i, j) = Complex(z[0].get<double>(), z[1].get<double>());
        }
    }
    try {
        require_finite(m, where);
    } catch (const NonFiniteInput& e) {
        throw ParseError(e.what());
    }
    return m;
}

json complex_matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

BcSpec parse_bc(const json& v, std::string_view where) {
    if (!v.is_object()) {
        throw ParseError(std::string(where) + ": bc must be an object");
    }
    if (v.contains("type")) {
        NamedBc named;
        named.type = require_string(v["type"], where);
        const auto it = named_types().find(named.type);
        if (it == named_types().end()) {
            throw ParseError(std::string(where) + ": unknown bc type '" + named.type + "'");
        }
        const ParamSpec& spec = it->second;
        for (const auto& [key, value] : v.items()) {
            if (key == "type") {
                continue;
            }
            const bool known = std::find(spec.required.begin(), spec.required.end(), key) !=
                                   spec.required.end() ||
                               spec.optional.contains(key);
            if (!known) {
                throw ParseError(std::string(where) + ": unknown parameter '" + key +
                                 "' for bc type '" + named.type + "'");
            }
            named.params[key] = require_number(value, std::string(where) + "." + key);
        }
        for (const auto& key : spec.required) {
            if (!named.params.contains(key)) {
                throw ParseError(std::string(where) + ": bc type '" + named.type +
                                 "' needs parameter '" + key + "'");
            }
        }
        return named;
    }
    reject_unknown_keys(v, {"A", "B"}, where);
    ExplicitBc bc;
    bc.A = parse_complex_matrix(require_key(v, "A", where), std::string(where) + ".A");
    bc.B = parse_complex_matrix(require_key(v, "B", where), std::string(where) + ".B");
    return bc;
}

double param(const NamedBc& bc, const std::string& key) {
    const auto it = bc.params.find(key);
    if (it != bc.params.end()) {
        return it->second;
    }
    const ParamSpec& spec = named_types().at(bc.type);
    const auto opt = spec.optional.find(key);
    if (opt == spec.optional.end()) {
        throw InvalidParameters("bc type '" + bc.type + "' is missing parameter '" + key + "'");
    }
    return opt->second;
}

void require_dim(const NamedBc& bc, std::size_t dim, std::size_t want) {
    if (dim != want) {
        throw InvalidParameters("bc type '" + bc.type + "' needs " + std::to_string(want) +
                                " endpoints, vertex has " + std::to_string(dim));
    }
}

} // namespace

bool operator==(const ExplicitBc& l, const ExplicitBc& r) {
    return l.A.rows() == r.A.rows() && l.A.cols() == r.A.cols() && l.B.rows() == r.B.rows() &&
           l.B.cols() == r.B.cols() && l.A == r.A && l.B == r.B;
}

bool operator==(const GraphDocument& l, const GraphDocument& r) {
    return l.externals == r.externals && l.internals == r.internals &&
           l.vertices == r.vertices && l.metadata == r.metadata;
}

GraphDocument parse_document(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!root.is_object()) {
        throw ParseError("document root must be an object");
    }
    reject_unknown_keys(root, {"externals", "internals", "vertices", "metadata"}, "document");

    GraphDocument doc;
    if (root.contains("externals")) {
        const json& ext = root["externals"];
        if (!ext.is_array()) {
            throw ParseError("externals must be an array of strings");
        }
        for (const auto& id : ext) {
            doc.externals.push_back(require_string(id, "externals"));
        }
    }
    if (root.contains("internals")) {
        const json& ints = root["internals"];
        if (!ints.is_array()) {
            throw ParseError("internals must be an array");
        }
        for (std::size_t i = 0; i < ints.size(); ++i) {
            const std::string where = "internals[" + std::to_string(i) + "]";
            const json& line = ints[i];
            if (!line.is_object()) {
                throw ParseError(where + ": expected an object");
            }
            reject_unknown_keys(line, {"id", "length"}, where);
            doc.internals.push_back(
                InternalLine{require_string(require_key(line, "id", where), where + ".id"),
                             require_number(require_key(line, "length", where), where + ".length")});
        }
    }
    const json& verts = require_key(root, "vertices", "document");
    if (!verts.is_array()) {
        throw ParseError("vertices must be an array");
    }
    for (std::size_t v = 0; v < verts.size(); ++v) {
        const std::string where = "vertices[" + std::to_string(v) + "]";
        const json& vx = verts[v];
        if (!vx.is_object()) {
            throw ParseError(where + ": expected an object");
        }
        reject_unknown_keys(vx, {"endpoints", "bc"}, where);
        const json& eps = require_key(vx, "endpoints", where);
        if (!eps.is_array()) {
            throw ParseError(where + ".endpoints must be an array");
        }
        VertexSpec spec{{}, NamedBc{}};
        for (const auto& ep : eps) {
            spec.endpoints.push_back(EndpointRef::parse(require_string(ep, where + ".endpoints")));
        }
        spec.bc = parse_bc(require_key(vx, "bc", where), where + ".bc");
        doc.vertices.push_back(std::move(spec));
    }
    if (root.contains("metadata")) {
        doc.metadata = root["metadata"];
    }
    return doc;
}

GraphDocument load_document(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str());
}

std::string to_json(const GraphDocument& doc) {
    json root = json::object();
    root["externals"] = doc.externals;
    json ints = json::array();
    for (const auto& line : doc.internals) {
        ints.push_back({{"id", line.id}, {"length", line.length}});
    }
    root["internals"] = std::move(ints);
    json verts = json::array();
    for (const auto& vx : doc.vertices) {
        json eps = json::array();
        for (const auto& ref : vx.endpoints) {
            eps.push_back(ref.to_string());
        }
        json bc = json::object();
        if (const auto* named = std::get_if<NamedBc>(&vx.bc)) {
            bc["type"] = named->type;
            for (const auto& [key, value] : named->params) {
                bc[key] = value;
            }
        } else {
            const auto& expl = std::get<ExplicitBc>(vx.bc);
            bc["A"] = complex_matrix_to_json(expl.A);
            bc["B"] = complex_matrix_to_json(expl.B);
        }
        verts.push_back({{"endpoints", std::move(eps)}, {"bc", std::move(bc)}});
    }
    root["vertices"] = std::move(verts);
    root["metadata"] = doc.metadata;
    return root.dump(2);
}

BoundaryCondition make_bc(const BcSpec& spec, std::size_t dim) {
    if (const auto* expl = std::get_if<ExplicitBc>(&spec)) {
        if (static_cast<std::size_t>(expl->A.rows()) != dim) {
            throw InvalidGraph("explicit bc has size " + std::to_string(expl->A.rows()) +
                               " but the vertex has " + std::to_string(dim) + " endpoints");
        }
        try {
            return BoundaryCondition(expl->A, expl->B);
        } catch (const DimensionMismatch& e) {
            throw InvalidGraph(e.what());
        }
    }
    const auto& named = std::get<NamedBc>(spec);
    if (named.type == "dirichlet") {
        return dirichlet(dim);
    }
    if (named.type == "neumann") {
        return neumann(dim);
    }
    if (named.type == "kirchhoff") {
        return kirchhoff_standard(dim);
    }
    if (named.type == "robin") {
        require_dim(named, dim, 1);
        return robin(param(named, "phi"));
    }
    if (named.type == "delta") {
        require_dim(named, dim, 2);
        return delta_coupling(param(named, "strength"), param(named, "mu"));
    }
    if (named.type == "delta_prime") {
        require_dim(named, dim, 2);
        return delta_prime(param(named, "strength"));
    }
    if (named.type == "cyclic") {
        return cyclic_coupling(param(named, "c"), dim);
    }
    if (named.type == "sl2") {
        require_dim(named, dim, 2);
        return sl2_coupling(param(named, "a"), param(named, "b"), param(named, "c"),
                            param(named, "d"), param(named, "mu"));
    }
    throw InvalidParameters("unknown bc type '" + named.type + "'");
}

MetricGraph to_graph(const GraphDocument& doc) {
    MetricGraph g;
    g.externals = doc.externals;
    g.internals = doc.internals;
    for (const auto& vx : doc.vertices) {
        g.vertices.push_back(Vertex{vx.endpoints, make_bc(vx.bc, vx.endpoints.size())});
    }
    check_structure(g);
    return g;
}

GraphDocument from_graph(const MetricGraph& g) {
    GraphDocument doc;
    doc.externals = g.externals;
    doc.internals = g.internals;
    for (const auto& vx : g.vertices) {
        doc.vertices.push_back(VertexSpec{vx.endpoints, ExplicitBc{vx.bc.A(), vx.bc.B()}});
    }
    return doc;
}

} // namespace qgraph
