#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_map>

#include "qgraph/errors.hpp"

namespace qgraph {

namespace {

std::string unique_id(const std::string& base, const std::set<std::string>& taken) {
    for (int suffix = 1;; ++suffix) {
        std::string candidate = base + "/" + std::to_string(suffix);
        if (!taken.contains(candidate)) {
            return candidate;
        }
    }
}

std::set<std::string> internal_ids(const MetricGraph& g) {
    std::set<std::string> ids;
    for (const auto& line : g.internals) {
        ids.insert(line.id);
    }
    return ids;
}

std::ptrdiff_t find_internal(const MetricGraph& g, const std::string& id) {
    const auto it = std::find_if(g.internals.begin(), g.internals.end(),
                                 [&](const InternalLine& l) { return l.id == id; });
    return it == g.internals.end() ? -1 : it - g.internals.begin();
}

// Index of the vertex owning each endpoint, keyed by the endpoint text.
std::unordered_map<std::string, std::size_t> owners(const MetricGraph& g) {
    std::unordered_map<std::string, std::size_t> owner;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        for (const auto& ref : g.vertices[v].endpoints) {
            owner.emplace(ref.to_string(), v);
        }
    }
    return owner;
}

} // namespace

EndpointRef EndpointRef::external(std::string id) {
    return {EndpointKind::External, std::move(id)};
}

EndpointRef EndpointRef::start(std::string id) {
    return {EndpointKind::InternalStart, std::move(id)};
}

EndpointRef EndpointRef::end(std::string id) {
    return {EndpointKind::InternalEnd, std::move(id)};
}

EndpointRef EndpointRef::parse(std::string_view text) {
    if (text.starts_with("ext:")) {
        const std::string_view id = text.substr(4);
        if (id.empty()) {
            throw ParseError("endpoint reference '" + std::string(text) + "' has an empty id");
        }
        return external(std::string(id));
    }
    if (text.starts_with("int:")) {
        const std::string_view rest = text.substr(4);
        const auto colon = rest.rfind(':');
        if (colon == std::string_view::npos || colon == 0) {
            throw ParseError("endpoint reference '" + std::string(text) +
                             "' must look like int:<id>:0 or int:<id>:a");
        }
        const std::string_view id = rest.substr(0, colon);
        const std::string_view side = rest.substr(colon + 1);
        if (side == "0") {
            return start(std::string(id));
        }
        if (side == "a") {
            return end(std::string(id));
        }
        throw ParseError("endpoint reference '" + std::string(text) +
                         "' must end in ':0' or ':a'");
    }
    throw ParseError("endpoint reference '" + std::string(text) +
                     "' must start with 'ext:' or 'int:'");
}

std::string EndpointRef::to_string() const {
    switch (kind) {
    case EndpointKind::External:
        return "ext:" + id;
    case EndpointKind::InternalStart:
        return "int:" + id + ":0";
    case EndpointKind::InternalEnd:
        return "int:" + id + ":a";
    }
    return {};
}

void check_structure(const MetricGraph& g) {
    std::set<std::string> ext_ids;
    for (const auto& id : g.externals) {
        if (id.empty()) {
            throw InvalidGraph("external line with empty id");
        }
        if (!ext_ids.insert(id).second) {
            throw InvalidGraph("duplicate external id '" + id + "'");
        }
    }
    std::set<std::string> int_ids;
    for (const auto& line : g.internals) {
        if (line.id.empty()) {
            throw InvalidGraph("internal line with empty id");
        }
        if (!int_ids.insert(line.id).second) {
            throw InvalidGraph("duplicate internal id '" + line.id + "'");
        }
        if (!std::isfinite(line.length) || line.length <= 0.0) {
            throw InvalidGraph("internal line '" + line.id + "' needs a positive finite length");
        }
    }

    std::set<std::string> seen;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const Vertex& vx = g.vertices[v];
        if (vx.endpoints.empty()) {
            throw InvalidGraph("vertex " + std::to_string(v) + " has no endpoints");
        }
        if (vx.bc.dim() != vx.endpoints.size()) {
            throw InvalidGraph("vertex " + std::to_string(v) + " has " +
                               std::to_string(vx.endpoints.size()) +
                               " endpoints but a boundary condition of size " +
                               std::to_string(vx.bc.dim()));
        }
        for (const auto& ref : vx.endpoints) {
            const bool known = ref.kind == EndpointKind::External ? ext_ids.contains(ref.id)
                                                                  : int_ids.contains(ref.id);
            if (!known) {
                throw InvalidGraph("vertex " + std::to_string(v) + " refers to unknown endpoint " +
                                   ref.to_string());
            }
            if (!seen.insert(ref.to_string()).second) {
                throw InvalidGraph("endpoint " + ref.to_string() +
                                   " is assigned to more than one vertex");
            }
        }
    }
    const std::size_t expected = g.n() + 2 * g.m();
    if (seen.size() != expected) {
        for (const auto& id : g.externals) {
            if (!seen.contains("ext:" + id)) {
                throw InvalidGraph("dangling endpoint ext:" + id);
            }
        }
        for (const auto& line : g.internals) {
            for (const auto& ref : {EndpointRef::start(line.id), EndpointRef::end(line.id)}) {
                if (!seen.contains(ref.to_string())) {
                    throw InvalidGraph("dangling endpoint " + ref.to_string());
                }
            }
        }
    }
}

std::size_t endpoint_index(const MetricGraph& g, const EndpointRef& ref) {
    if (ref.kind == EndpointKind::External) {
        const auto it = std::find(g.externals.begin(), g.externals.end(), ref.id);
        if (it == g.externals.end()) {
            throw InvalidGraph("unknown endpoint " + ref.to_string());
        }
        return static_cast<std::size_t>(it - g.externals.begin());
    }
    const std::ptrdiff_t j = find_internal(g, ref.id);
    if (j < 0) {
        throw InvalidGraph("unknown endpoint " + ref.to_string());
    }
    const std::size_t base = ref.kind == EndpointKind::InternalStart ? g.n() : g.n() + g.m();
    return base + static_cast<std::size_t>(j);
}

GlobalBC assemble(const MetricGraph& g) {
    check_structure(g);
    const auto size = static_cast<Eigen::Index>(g.n() + 2 * g.m());
    ComplexMatrix a = ComplexMatrix::Zero(size, size);
    ComplexMatrix b = ComplexMatrix::Zero(size, size);
    Eigen::Index row = 0;
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const Vertex& vx = g.vertices[v];
        try {
            require_admissible(vx.bc);
        } catch (const InvalidBoundaryCondition& e) {
            throw InvalidBoundaryCondition("vertex " + std::to_string(v) + ": " + e.what());
        }
        std::vector<Eigen::Index> cols;
        cols.reserve(vx.endpoints.size());
        for (const auto& ref : vx.endpoints) {
            cols.push_back(static_cast<Eigen::Index>(endpoint_index(g, ref)));
        }
        const auto local = static_cast<Eigen::Index>(cols.size());
        for (Eigen::Index i = 0; i < local; ++i) {
            for (Eigen::Index j = 0; j < local; ++j) {
                a(row + i, cols[static_cast<std::size_t>(j)]) = vx.bc.A()(i, j);
                b(row + i, cols[static_cast<std::size_t>(j)]) = vx.bc.B()(i, j);
            }
        }
        row += local;
    }
    std::vector<double> lengths;
    lengths.reserve(g.m());
    for (const auto& line : g.internals) {
        lengths.push_back(line.length);
    }
    return GlobalBC{g.n(), g.m(), std::move(lengths), BoundaryCondition(a, b)};
}

BoundaryCondition trivial_vertex_bc() {
    ComplexMatrix a(2, 2);
    ComplexMatrix b(2, 2);
    a << 1.0, -1.0, 0.0, 0.0;
    b << 0.0, 0.0, 1.0, 1.0;
    return BoundaryCondition(a, b);
}

MetricGraph insert_trivial_vertex(const MetricGraph& g, const std::string& internal_id,
                                  double position) {
    const std::ptrdiff_t j = find_internal(g, internal_id);
    if (j < 0) {
        throw UnknownEdge("no internal line '" + internal_id + "'");
    }
    if (!(position > 0.0 && position < 1.0)) {
        throw InvalidParameters("insert_trivial_vertex: position must lie in (0, 1)");
    }
    MetricGraph out = g;
    const double length = g.internals[static_cast<std::size_t>(j)].length;
    const std::string fresh = unique_id(internal_id, internal_ids(g));

    out.internals[static_cast<std::size_t>(j)].length = position * length;
    out.internals.insert(out.internals.begin() + j + 1,
                         InternalLine{fresh, (1.0 - position) * length});

    const EndpointRef old_end = EndpointRef::end(internal_id);
    for (auto& vx : out.vertices) {
        for (auto& ref : vx.endpoints) {
            if (ref == old_end) {
                ref = EndpointRef::end(fresh);
            }
        }
    }
    out.vertices.push_back(
        Vertex{{EndpointRef::end(internal_id), EndpointRef::start(fresh)}, trivial_vertex_bc()});
    return out;
}

std::vector<std::string> tadpoles(const MetricGraph& g) {
    const auto owner = owners(g);
    std::vector<std::string> loops;
    for (const auto& line : g.internals) {
        const auto s = owner.find(EndpointRef::start(line.id).to_string());
        const auto e = owner.find(EndpointRef::end(line.id).to_string());
        if (s != owner.end() && e != owner.end() && s->second == e->second) {
            loops.push_back(line.id);
        }
    }
    return loops;
}

MetricGraph normalize_tadpoles(const MetricGraph& g, std::vector<TadpoleSplit>* splits) {
    MetricGraph out = g;
    for (const auto& id : tadpoles(g)) {
        const std::set<std::string> before = internal_ids(out);
        out = insert_trivial_vertex(out, id, 0.5);
        if (splits != nullptr) {
            splits->push_back({id, id, unique_id(id, before)});
        }
    }
    return out;
}

CutResult cut(const MetricGraph& g, const std::vector<std::string>& edge_ids) {
    check_structure(g);
    if (edge_ids.empty()) {
        throw NotACut("cut needs at least one internal line");
    }
    std::set<std::string> cut_set;
    for (const auto& id : edge_ids) {
        if (find_internal(g, id) < 0) {
            throw UnknownEdge("no internal line '" + id + "'");
        }
        if (!cut_set.insert(id).second) {
            throw NotACut("internal line '" + id + "' listed twice");
        }
    }

    const auto owner = owners(g);
    const std::size_t nv = g.vertices.size();
    auto vertex_of = [&](const EndpointRef& ref) { return owner.at(ref.to_string()); };

    // Connected components of the vertex graph without the cut lines.
    std::vector<std::size_t> comp(nv);
    std::iota(comp.begin(), comp.end(), std::size_t{0});
    auto root = [&](std::size_t x) {
        while (comp[x] != x) {
            comp[x] = comp[comp[x]];
            x = comp[x];
        }
        return x;
    };
    for (const auto& line : g.internals) {
        if (cut_set.contains(line.id)) {
            continue;
        }
        const std::size_t a = root(vertex_of(EndpointRef::start(line.id)));
        const std::size_t b = root(vertex_of(EndpointRef::end(line.id)));
        comp[std::max(a, b)] = std::min(a, b);
    }
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < nv; ++v) {
        roots.insert(root(v));
    }
    if (roots.size() != 2) {
        throw NotACut("removing the lines leaves " + std::to_string(roots.size()) +
                      " connected parts, expected 2");
    }

    const std::size_t left_root = root(vertex_of(EndpointRef::start(edge_ids.front())));
    std::vector<bool> on_left(nv);
    for (std::size_t v = 0; v < nv; ++v) {
        on_left[v] = root(v) == left_root;
    }

    // Which end of each cut line lies on the left.
    std::map<std::string, EndpointKind> left_end;
    for (const auto& id : edge_ids) {
        const bool s_left = on_left[vertex_of(EndpointRef::start(id))];
        const bool e_left = on_left[vertex_of(EndpointRef::end(id))];
        if (s_left == e_left) {
            throw NotACut("internal line '" + id + "' does not join the two parts");
        }
        left_end[id] = s_left ? EndpointKind::InternalStart : EndpointKind::InternalEnd;
    }

    std::set<std::string> all_ext(g.externals.begin(), g.externals.end());
    CutResult result;
    for (const auto& id : edge_ids) {
        CutPair pair{id + "/L", id + "/R", g.internals[static_cast<std::size_t>(find_internal(g, id))].length};
        if (all_ext.contains(pair.left_id) || all_ext.contains(pair.right_id)) {
            throw InvalidGraph("cut external id clashes with an existing external line");
        }
        result.map.pairs.push_back(std::move(pair));
    }

    auto side_of_external = [&](const std::string& id) {
        return on_left[vertex_of(EndpointRef::external(id))];
    };
    for (const auto& id : g.externals) {
        if (side_of_external(id)) {
            result.left.externals.push_back(id);
        }
    }
    for (const auto& pair : result.map.pairs) {
        result.left.externals.push_back(pair.left_id);
        result.right.externals.push_back(pair.right_id);
    }
    for (const auto& id : g.externals) {
        if (!side_of_external(id)) {
            result.right.externals.push_back(id);
        }
    }
    for (const auto& line : g.internals) {
        if (cut_set.contains(line.id)) {
            continue;
        }
        const bool left = on_left[vertex_of(EndpointRef::start(line.id))];
        (left ? result.left : result.right).internals.push_back(line);
    }
    for (std::size_t v = 0; v < nv; ++v) {
        Vertex vx = g.vertices[v];
        for (auto& ref : vx.endpoints) {
            if (ref.kind == EndpointKind::External || !cut_set.contains(ref.id)) {
                continue;
            }
            const bool is_left_end = ref.kind == left_end.at(ref.id);
            ref = EndpointRef::external(ref.id + (is_left_end ? "/L" : "/R"));
        }
        (on_left[v] ? result.left : result.right).vertices.push_back(std::move(vx));
    }
    return result;
}

VertexPartition vertex_partition(const MetricGraph& g) {
    VertexPartition partition;
    for (const auto& vx : g.vertices) {
        std::vector<std::size_t> block;
        for (const auto& ref : vx.endpoints) {
            block.push_back(endpoint_index(g, ref));
        }
        std::sort(block.begin(), block.end());
        partition.blocks.push_back(std::move(block));
    }
    std::sort(partition.blocks.begin(), partition.blocks.end());
    return partition;
}

} // namespace qgraph
